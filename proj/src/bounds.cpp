#include "hkz/bounds.hpp"

#include <array>
#include <iomanip>
#include <sstream>

#include "hkz/error.hpp"
#include "hkz/json_util.hpp"
#include "hkz/reduction.hpp"

namespace hkz {

namespace {

// γ_n^n for n = 1..8: the exact Hermite constants (Korkine–Zolotarev for
// n ≤ 5, Blichfeldt for n = 6..8; attained by A_2, A_3, D_4, D_5, E_6, E_7,
// E_8).
std::array<Rat, kMaxHermiteRank> const& HermiteTable() {
  static std::array<Rat, kMaxHermiteRank> const table = {
      Rat(1), Rat(4, 3), Rat(2), Rat(4), Rat(8), Rat(64, 3), Rat(64), Rat(256)};
  return table;
}

}  // namespace

Rat OrthogonalityDefect(GramMatrix const& g) {
  Rat product = 1;
  for (std::size_t i = 0; i < g.rank(); ++i) product *= g(i, i);
  return product / Determinant(g);
}

Rat HermiteInvariantPower(GramMatrix const& g) {
  Rat const lambda1_sq = ShortestVector(g).norm_sq;
  return Pow(lambda1_sq, static_cast<unsigned>(g.rank())) / Determinant(g);
}

Rat HermiteConstantPower(std::size_t n) {
  if (n < 1 || n > kMaxHermiteRank) {
    Fail(ErrorKind::kUnsupported,
         "Hermite constant unknown for rank " + std::to_string(n));
  }
  return HermiteTable()[n - 1];
}

Rat LlsBound(std::size_t n) {
  Rat bound = HermiteConstantPower(n);
  for (std::size_t i = 1; i <= n; ++i) {
    bound *= Frac(static_cast<long>(i) + 3, 4);
  }
  return bound;
}

Rat NewBound(std::size_t n) {
  if (n < 4) {
    Fail(ErrorKind::kUnsupported, "new bound applies only to rank >= 4");
  }
  Rat bound = Rat(25, 12) * HermiteConstantPower(n - 3);
  for (std::size_t i = 4; i <= n; ++i) {
    bound *= Frac(static_cast<long>(i), 4) + Rat(29, 24);
  }
  return bound;
}

Rat DeltaExact(std::size_t n) {
  switch (n) {
    case 1:
      return Rat(1);
    case 2:
      return Rat(4, 3);
    case 3:
      return Rat(25, 12);
    default:
      Fail(ErrorKind::kUnsupported,
           "exact value conjectural for rank " + std::to_string(n) +
               " (conjectured equal to gamma_n^n)");
  }
}

std::vector<BoundRow> BoundTable(std::size_t n_max) {
  if (n_max < 1 || n_max > kMaxHermiteRank) {
    Fail(ErrorKind::kUnsupported,
         "Hermite constant unknown for rank " + std::to_string(n_max));
  }
  std::vector<BoundRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BoundRow row;
    row.n = n;
    row.gamma_pow = HermiteConstantPower(n);
    row.lls_bound = LlsBound(n);
    if (n >= 4) {
      row.new_bound = NewBound(n);
      row.new_is_sharper = *row.new_bound < row.lls_bound;
    }
    if (n <= 3) row.delta_exact = DeltaExact(n);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string BoundTableCsv(std::vector<BoundRow> const& rows) {
  std::ostringstream out;
  out << "n,gamma_pow,lls_bound,new_bound,delta_exact\n";
  for (BoundRow const& row : rows) {
    out << row.n << ',' << ToString(row.gamma_pow) << ','
        << ToString(row.lls_bound) << ','
        << (row.new_bound ? ToString(*row.new_bound) : "") << ','
        << (row.delta_exact ? ToString(*row.delta_exact) : "") << '\n';
  }
  return out.str();
}

std::string BoundTableJson(std::vector<BoundRow> const& rows) {
  nlohmann::json array = nlohmann::json::array();
  for (BoundRow const& row : rows) {
    array.push_back({
        {"n", row.n},
        {"gamma_pow", RationalJson(row.gamma_pow)},
        {"lls_bound", RationalJson(row.lls_bound)},
        {"new_bound", row.new_bound ? RationalJson(*row.new_bound)
                                    : nlohmann::json(nullptr)},
        {"delta_exact", row.delta_exact ? RationalJson(*row.delta_exact)
                                        : nlohmann::json(nullptr)},
        {"new_is_sharper", row.new_is_sharper ? nlohmann::json(*row.new_is_sharper)
                                              : nlohmann::json(nullptr)},
    });
  }
  return array.dump(2) + "\n";
}

std::string BoundTableText(std::vector<BoundRow> const& rows) {
  std::ostringstream out;
  auto cell = [](std::optional<Rat> const& v) {
    return v ? ToString(*v) + " (" + ToDecimal(*v) + ")" : std::string("-");
  };
  for (BoundRow const& row : rows) {
    out << "n=" << row.n << "  gamma_pow=" << cell(row.gamma_pow)
        << "  lls_bound=" << cell(row.lls_bound)
        << "  new_bound=" << cell(row.new_bound)
        << "  delta_exact=" << cell(row.delta_exact);
    if (row.new_is_sharper) {
      out << "  new<lls=" << (*row.new_is_sharper ? "yes" : "no");
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace hkz
