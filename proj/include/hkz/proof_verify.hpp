#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hkz/lattice.hpp"

// Re-verification of the rank-3 case analysis bounding the orthogonality
// defect of HKZ bases by 25/12. A rank-3 basis with ‖b_1‖² = 1 is described
// by λ = μ_{2,1}, μ = μ_{3,1}, σ = μ_{3,2}, k = ‖b_2(2)‖², l = ‖b_3(3)‖².
//
// The scans check sign conditions at every point of a rational grid with
// exact arithmetic. Between grid points nothing is claimed.
namespace hkz {

struct CasePoint {
  Rat lambda;
  Rat mu;
  Rat sigma;
  Rat k;
  Rat l;

  // λ, μ ∈ [0, 1/2], σ ∈ [−1/2, 1/2], k, l > 0.
  void Validate() const;

  friend bool operator==(CasePoint const&, CasePoint const&) = default;
};

// holds[0..4] are the HKZ conditions
//   k + λ² ≥ 1,  l + kσ² + μ² ≥ 1,  l + k(1+σ)² + (1−λ−μ)² ≥ 1,
//   l + k(1−σ)² + (λ−μ)² ≥ 1,  l + kσ² ≥ k,
// holds[5..7] their consequences
//   k ≤ l/(1−σ²),  λ² ≥ 1 − l/(1−σ²),  μ² ≥ 1 − l/(1−σ²).
struct InequalityReport {
  std::array<bool, 8> holds{};
  std::optional<int> first_violated;  // 1-based index into holds

  bool hkz_conditions_hold() const;
  // The HKZ conditions hold and then so do their consequences.
  bool consistent() const;
};

InequalityReport CheckHkzInequalities(CasePoint const& p);

// (1 + λ²/k)(1 + (μ² + kσ²)/l).
Rat DefectFromParameters(CasePoint const& p);

// |σ| ≤ 1/3 branch: Δ ≤ (1 + 1/(4k))(9/8 + 1/(4l)) ≤ 2 for k ≥ 3/4,
// l ≥ 2/3.
struct SmallSigmaReport {
  Rat corner_value;  // at k = 3/4, l = 2/3
  bool corner_is_gamma3_cubed = false;
  std::size_t interior_samples = 0;
  std::size_t interior_strictly_below = 0;
  bool monotone = false;
  bool floor_above_9_8 = false;
  std::size_t parameter_samples = 0;  // HKZ-admissible (λ, μ, σ, k, l)
  std::size_t parameter_within_bound = 0;
  bool passed = false;
};

Rat SmallSigmaEnvelope(Rat const& k, Rat const& l);
SmallSigmaReport VerifySmallSigmaBound();

enum class CaseId { kNegKMin, kNegKMax, kPosKMin, kPosKMax };

inline constexpr std::array<CaseId, 4> kAllCases = {
    CaseId::kNegKMin, CaseId::kNegKMax, CaseId::kPosKMin, CaseId::kPosKMax};

std::string_view CaseName(CaseId id);  // "NEG_KMIN", …
CaseId ParseCaseId(std::string_view name);
bool IsNegativeSigmaCase(CaseId id);

// Q(σ) = aσ² + bσ + c at fixed (λ, μ). Q(σ) > 0 exactly when the case's
// upper bound for Δ exceeds 25/12.
struct QuadraticCase {
  CaseId id;
  Rat a;
  Rat b;
  Rat c;

  Rat Evaluate(Rat const& sigma) const;
  // Real roots (r⁻, r⁺) in floating point, if any; for display only.
  std::optional<std::pair<double, double>> Roots() const;
};

// Admissible (λ, μ) per case:
//   NEG_KMIN  1/4 ≤ λ ≤ 1/2, (1+λ−μ)² ≤ λ² + 2λ, μ ≤ 1/2
//   NEG_KMAX  0 ≤ λ, μ ≤ 1/2, λ + μ > 0
//   POS_KMIN  0 ≤ λ ≤ 1/2, 0 ≤ μ ≤ min(2λ, 1/2)
//   POS_KMAX  0 ≤ λ, μ ≤ 1/2
bool InCaseRegion(CaseId id, Rat const& lambda, Rat const& mu);

// Throws kInvalidInput outside the case region.
QuadraticCase CaseQuadratic(CaseId id, Rat const& lambda, Rat const& mu);

// The (k, l) at which the case's bound on Δ is attained for (λ, μ, σ): the
// k-extreme of the case and the l forced by the binding inequality.
// DefectFromParameters of the result is the case's bound expression.
CasePoint RealizeCasePoint(CaseId id, Rat const& lambda, Rat const& mu,
                           Rat const& sigma);

using QuadraticProvider =
    std::function<QuadraticCase(CaseId, Rat const&, Rat const&)>;

struct ScanOptions {
  unsigned workers = 1;
  QuadraticProvider provider;  // CaseQuadratic when empty
  std::size_t max_recorded = 64;
};

struct CaseScanReport {
  CaseId id = CaseId::kNegKMin;
  Rat grid_step;
  std::uint64_t points_checked = 0;
  std::uint64_t cells_visited = 0;  // admissible (λ, μ) pairs
  Rat min_lambda_visited;
  Rat max_value;
  CasePoint argmax;
  std::optional<std::pair<double, double>> roots_at_argmax;
  std::vector<CasePoint> equality_points;
  std::vector<CasePoint> violations;  // first max_recorded
  std::uint64_t violation_count = 0;
  double wall_time_seconds = 0;
  bool passed = false;
};

// Points where Q(σ) = 0 is expected: the extremal form.
std::vector<CasePoint> DocumentedEqualityPoints(CaseId id);

// Evaluates Q(σ) ≤ 0 at every grid point (λ, μ) in the case region and σ in
// [−1/2, −1/3] (NEG) or [1/3, 1/2] (POS), endpoints included. `step` must
// divide 1/2.
CaseScanReport ScanCase(CaseId id, Rat const& step,
                        ScanOptions const& options = {});

// Sign agreement between Q(σ) and (case bound − 25/12) at random grid
// points.
struct ConsistencyReport {
  CaseId id = CaseId::kNegKMin;
  std::size_t samples = 0;
  std::size_t agreements = 0;
  bool passed = false;
};

ConsistencyReport CheckBoundConsistency(CaseId id, Rat const& step,
                                        std::size_t samples,
                                        std::uint64_t seed);

// f: σ ≤ −1/3 with l from the (1+σ)² condition; F: σ ≥ 1/3 with l from
// the (1−σ)² condition. Both are functions of k with (λ, μ, σ) fixed.
enum class ConvexBranch { kNegativeSigma, kPositiveSigma };

std::string_view BranchName(ConvexBranch branch);  // "f" / "F"

// Value of f(k) or F(k) at the point's (λ, μ, σ, k).
Rat BranchFunction(ConvexBranch branch, CasePoint const& p);

// k³·D(k)³·(d²/dk²)f, from exact differentiation of the closed form, where
// D(k) = 1 − (1−λ−μ)² − k(1+σ)² for f and 1 − (λ−μ)² − k(1−σ)² for F.
// Throws kInvalidInput when k ≤ 0 or D(k) ≤ 0.
Rat ConvexityNumerator(ConvexBranch branch, CasePoint const& p);

// Two term-by-term expansions of the same numerator, kept as given.
// They are compared against ConvexityNumerator, not trusted.
Rat ExpandedNumeratorFirstForm(ConvexBranch branch, CasePoint const& p);
Rat ExpandedNumeratorSecondForm(ConvexBranch branch, CasePoint const& p);

// (f(k+h) − 2f(k) + f(k−h)) / h², exact.
Rat SecondDifference(ConvexBranch branch, CasePoint const& p, Rat const& h);

struct ConvexitySample {
  CasePoint point;
  Rat numerator;
  Rat second_difference;
  double float_second_difference = 0;
  double richardson = 0;   // from exact differences at h and h/2
  double closed_form = 0;  // numerator / (k³D³)
};

struct ConvexityCertificate {
  ConvexBranch which = ConvexBranch::kNegativeSigma;
  std::vector<ConvexitySample> samples;
  std::size_t grid_points = 0;  // (λ, μ, σ, k) grid before region filtering
  bool numerators_nonnegative = false;
  bool second_differences_nonnegative = false;
  bool float_cross_check = false;  // every float difference ≥ −1e−12
  bool richardson_agrees = false;
  std::size_t first_form_agreements = 0;
  std::size_t second_form_agreements = 0;
  bool passed = false;
};

// per_axis points each for λ, μ, σ and k; (λ, μ, σ) cells whose k-range
// [1 − λ², k_max] is empty lie outside the branch region and are skipped.
ConvexityCertificate SampleConvexity(ConvexBranch branch,
                                     std::size_t per_axis = 10);

// (x + (y+z)/2)² + (y ± z/2)² + 3z²/4, scaled.
GramMatrix ExtremalGram(int sign, Rat const& scale = Rat(1));

struct ExtremalVariant {
  std::string name;
  GramMatrix gram;
  bool hkz_reduced = false;
  std::string failure;
  Rat defect;
};

struct ExtremalFormReport {
  std::vector<ExtremalVariant> variants;
  bool passed = false;
};

ExtremalFormReport VerifyExtremalForm();

struct ProofOptions {
  Rat step = Rat(1, 100);
  std::optional<CaseId> only_case;
  unsigned workers = 1;
  // Negative control: perturbs NEG_KMAX's constant term by +1/1000.
  bool inject_fault = false;
  std::size_t consistency_samples = 100;
  std::uint64_t seed = 1;
};

struct ProofCertificate {
  Rat step;
  std::vector<CaseScanReport> cases;
  std::vector<ConsistencyReport> consistency;
  SmallSigmaReport small_sigma;
  std::vector<ConvexityCertificate> convexity;
  ExtremalFormReport extremal;
  double wall_time_seconds = 0;
  bool passed = false;
};

ProofCertificate VerifyProof(ProofOptions const& options);

nlohmann::json ProofCertificateJson(ProofCertificate const& certificate);

}  // namespace hkz
