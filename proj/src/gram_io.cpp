#include "hkz/gram_io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "hkz/error.hpp"

namespace hkz {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r')) {
      ++i;
    }
    std::size_t const start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r') {
      ++i;
    }
    if (i > start) tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

[[noreturn]] void ParseFail(std::size_t line, std::size_t column,
                            std::string const& what) {
  Fail(ErrorKind::kParse, "line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ": " + what);
}

template <typename Scalar>
std::string Format(Matrix<Scalar> const& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << ToString(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

GramMatrix ParseGram(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t const end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  if (lines.empty() || Tokenize(lines[0]).empty()) {
    ParseFail(1, 1, "expected the rank");
  }
  auto const header = Tokenize(lines[0]);
  if (header.size() != 1) {
    ParseFail(1, header[1].column, "unexpected token after the rank");
  }
  Rat const rank = [&] {
    try {
      return ParseRational(header[0].text);
    } catch (Error const& e) {
      ParseFail(1, header[0].column, e.what());
    }
  }();
  if (rank.get_den() != 1 || rank < 1 || rank > 64) {
    ParseFail(1, header[0].column, "rank must be an integer in [1, 64]");
  }
  std::size_t const n = rank.get_num().get_ui();

  Matrix<Rat> entries(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t const line_no = i + 2;
    if (i + 1 >= lines.size()) {
      ParseFail(line_no, 1, "expected " + std::to_string(n) + " rows");
    }
    auto const tokens = Tokenize(lines[i + 1]);
    if (tokens.size() != n) {
      std::size_t const column =
          tokens.size() > n ? tokens[n].column : lines[i + 1].size() + 1;
      ParseFail(line_no, column,
                "expected " + std::to_string(n) + " entries, found " +
                    std::to_string(tokens.size()));
    }
    for (std::size_t j = 0; j < n; ++j) {
      try {
        entries(i, j) = ParseRational(tokens[j].text);
      } catch (Error const& e) {
        ParseFail(line_no, tokens[j].column, e.what());
      }
    }
  }
  for (std::size_t i = n + 1; i < lines.size(); ++i) {
    auto const tokens = Tokenize(lines[i]);
    if (!tokens.empty()) {
      ParseFail(i + 1, tokens[0].column, "trailing content after the matrix");
    }
  }
  return GramMatrix(std::move(entries));
}

GramMatrix ReadGramFile(std::string const& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kParse, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseGram(buffer.str());
}

std::string FormatGram(GramMatrix const& g) {
  return std::to_string(g.rank()) + "\n" + Format(g.entries());
}

std::string FormatMatrix(Matrix<Rat> const& m) { return Format(m); }
std::string FormatMatrix(Matrix<Integer> const& m) { return Format(m); }

}  // namespace hkz
