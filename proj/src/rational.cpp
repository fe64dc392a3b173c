#include "hkz/rational.hpp"

#include <cctype>
#include <cstdio>
#include <vector>

#include "hkz/error.hpp"

namespace hkz {

namespace {

bool IsSignedDigits(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer ParseInteger(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rat ParseRational(std::string_view text) {
  auto const slash = text.find('/');
  std::string_view const num = text.substr(0, slash);
  if (!IsSignedDigits(num, /*allow_sign=*/true)) {
    Fail(ErrorKind::kParse, "not a rational: '" + std::string(text) + "'");
  }
  Rat value;
  if (slash == std::string_view::npos) {
    value = Rat(ParseInteger(num));
    return value;
  }
  std::string_view const den = text.substr(slash + 1);
  if (!IsSignedDigits(den, /*allow_sign=*/false)) {
    Fail(ErrorKind::kParse, "not a rational: '" + std::string(text) + "'");
  }
  Integer const d = ParseInteger(den);
  if (d == 0) {
    Fail(ErrorKind::kParse, "zero denominator in '" + std::string(text) + "'");
  }
  value = Rat(ParseInteger(num), d);
  value.canonicalize();
  return value;
}

std::string ToString(Rat const& value) { return value.get_str(10); }

std::string ToString(Integer const& value) { return value.get_str(10); }

std::string ToDecimal(Rat const& value, int digits) {
  mpf_class f(0, 512);
  f = value;
  int const size = gmp_snprintf(nullptr, 0, "%.*Fg", digits, f.get_mpf_t());
  std::vector<char> buffer(static_cast<std::size_t>(size) + 1);
  gmp_snprintf(buffer.data(), buffer.size(), "%.*Fg", digits, f.get_mpf_t());
  return std::string(buffer.data(), static_cast<std::size_t>(size));
}

Rat Frac(long num, long den) {
  if (den == 0) Fail(ErrorKind::kInvalidInput, "zero denominator");
  Rat value(num, den);
  value.canonicalize();
  return value;
}

double ToDouble(Rat const& value) { return value.get_d(); }

Integer Floor(Rat const& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Integer Round(Rat const& value) { return Floor(value + Rat(1, 2)); }

Rat Abs(Rat const& value) { return value < 0 ? Rat(-value) : value; }

Rat Pow(Rat const& value, unsigned exponent) {
  Rat result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= value;
  return result;
}

}  // namespace hkz
