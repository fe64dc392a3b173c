#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hkz/lattice.hpp"

namespace hkz {

struct ShortestVectorResult {
  IntVector coeffs;  // in the input basis; first nonzero entry positive
  Rat norm_sq;
  std::uint64_t nodes_visited = 0;
};

struct ReductionReport {
  GramMatrix reduced;
  Unimodular transform;  // reduced = transform · input · transformᵀ
  std::uint64_t svp_calls = 0;
  std::uint64_t total_nodes = 0;
};

struct SizeReduction {
  GramMatrix reduced;
  Unimodular transform;
};

struct HkzCertificate {
  bool reduced = false;
  std::string failure;  // empty when reduced
  // 0-based level of the first failing condition.
  std::optional<std::size_t> level;
};

struct SuccessiveMinima {
  std::vector<Rat> minima_sq;    // λ_1², …, λ_n²
  std::vector<IntVector> witnesses;  // coordinates in the input basis
};

struct BasisBoundCheck {
  std::string family;
  std::size_t index = 0;  // 1-based, as in the inequality
  Rat lhs;
  Rat rhs;
  bool holds = false;
};

// The Korkine–Zolotarev and Lagarias–Lenstra–Schnorr inequalities on an
// HKZ-reduced basis, every instance evaluated exactly.
struct BasisBoundReport {
  std::vector<BasisBoundCheck> checks;
  SuccessiveMinima minima;
  bool all_hold = true;

  // Largest lhs/rhs over a family; 1 means some instance is tight.
  Rat TightestRatio(std::string const& family) const;
};

inline constexpr std::size_t kMaxMinimaRank = 6;

// |μ_{i,j}| ≤ 1/2 via integer row operations; ‖b_i(i)‖² unchanged.
SizeReduction SizeReduce(GramMatrix const& g);

// Exact Fincke–Pohst / Schnorr–Euchner enumeration. Among minimal vectors,
// the tie-break prefers the smallest (|x_n|, …, |x_1|) in lexicographic
// order, then the smallest sign-normalized x; so an already-shortest b_1
// is always kept.
ShortestVectorResult ShortestVector(GramMatrix const& g);

// Gram matrix of b_first(first+1), …, b_n(first+1) (0-based `first`): the
// projection orthogonal to the first `first` basis vectors.
GramMatrix ProjectedGram(GramMatrix const& g, std::size_t first);
GramMatrix ProjectedGram(GSOData const& gso, std::size_t first);

ReductionReport HkzReduce(GramMatrix const& g);

HkzCertificate IsHkzReduced(GramMatrix const& g);

// Exact λ_i² with independent witnesses. Rank ≤ kMaxMinimaRank.
SuccessiveMinima ComputeSuccessiveMinima(GramMatrix const& g);

// Requires a certified HKZ-reduced input of rank ≤ kMaxMinimaRank.
// Families: "gso_adjacent" ‖b_i(i)‖² ≤ 4/3‖b_{i+1}(i+1)‖²,
// "gso_skip" ‖b_i(i)‖² ≤ 3/2‖b_{i+2}(i+2)‖², "norm_lower"
// 4/(i+3)λ_i² ≤ ‖b_i‖², "norm_upper" ‖b_i‖² ≤ (i+3)/4 λ_i²,
// "gso_vs_minima" ‖b_i(i)‖² ≤ λ_i².
BasisBoundReport CheckBasisBounds(GramMatrix const& g);

// Normalizes the sign so the first nonzero entry is positive.
IntVector SignNormalized(IntVector x);

}  // namespace hkz
