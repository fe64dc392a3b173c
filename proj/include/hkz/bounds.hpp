#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hkz/lattice.hpp"

namespace hkz {

inline constexpr std::size_t kMaxHermiteRank = 8;

struct BoundRow {
  std::size_t n = 0;
  Rat gamma_pow;                  // γ_n^n
  Rat lls_bound;                  // γ_n^n ∏_{i=1}^n (i+3)/4
  std::optional<Rat> new_bound;   // n ≥ 4 only
  std::optional<Rat> delta_exact; // n ≤ 3 only
  // new_bound < lls_bound, when new_bound is present.
  std::optional<bool> new_is_sharper;
};

// ∏‖b_i‖² / det(G).
Rat OrthogonalityDefect(GramMatrix const& g);

// γ(B)^n = (λ_1²)^n / det(G); kept as the n-th power so it stays rational.
Rat HermiteInvariantPower(GramMatrix const& g);

// γ_n^n for 1 ≤ n ≤ 8; throws kUnsupported beyond.
Rat HermiteConstantPower(std::size_t n);

// Lagarias–Lenstra–Schnorr defect bound for HKZ bases, 1 ≤ n ≤ 8.
Rat LlsBound(std::size_t n);

// 25/12 · γ_{n−3}^{n−3} · ∏_{i=4}^n (i/4 + 29/24), for 4 ≤ n ≤ 11.
Rat NewBound(std::size_t n);

// Exact maximal defect of HKZ bases for n ≤ 3; kUnsupported for n ≥ 4,
// where only the conjecture Δ_n = γ_n^n is available.
Rat DeltaExact(std::size_t n);

std::vector<BoundRow> BoundTable(std::size_t n_max);

// CSV with header `n,gamma_pow,lls_bound,new_bound,delta_exact`; absent
// values are empty fields.
std::string BoundTableCsv(std::vector<BoundRow> const& rows);
// JSON array; each rational is an object {"exact": "p/q", "decimal": "..."}
// and absent values are null.
std::string BoundTableJson(std::vector<BoundRow> const& rows);
std::string BoundTableText(std::vector<BoundRow> const& rows);

}  // namespace hkz
