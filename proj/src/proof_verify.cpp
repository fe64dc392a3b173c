#include "hkz/proof_verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <tuple>

#include "hkz/bounds.hpp"
#include "hkz/error.hpp"
#include "hkz/json_util.hpp"
#include "hkz/parallel.hpp"
#include "hkz/reduction.hpp"

namespace hkz {

namespace {

Rat const kHalf(1, 2);
Rat const kThird(1, 3);
Rat const kTarget(25, 12);

Rat Sq(Rat const& x) { return x * x; }

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bool PointLess(CasePoint const& a, CasePoint const& b) {
  return std::tie(a.lambda, a.mu, a.sigma) < std::tie(b.lambda, b.mu, b.sigma);
}

// Pieces of f / F shared by the closed form and the expansions.
struct BranchTerms {
  Rat offset_sq;  // (1−λ−μ)² or (λ−μ)²
  Rat slope;      // (1+σ)² or (1−σ)²
  Rat denom;      // D(k) = 1 − offset_sq − k·slope
  Rat numer;      // N(k) = μ² + kσ²
};

BranchTerms Terms(ConvexBranch branch, CasePoint const& p) {
  bool const neg = branch == ConvexBranch::kNegativeSigma;
  Rat const offset_sq =
      neg ? Sq(1 - p.lambda - p.mu) : Sq(p.lambda - p.mu);
  Rat const slope = neg ? Sq(1 + p.sigma) : Sq(1 - p.sigma);
  return {offset_sq, slope, 1 - offset_sq - p.k * slope,
          Sq(p.mu) + p.k * Sq(p.sigma)};
}

}  // namespace

void CasePoint::Validate() const {
  if (lambda < 0 || lambda > kHalf || mu < 0 || mu > kHalf ||
      sigma < -kHalf || sigma > kHalf) {
    Fail(ErrorKind::kInvalidInput,
         "case point out of range: need 0 <= lambda, mu <= 1/2 and "
         "|sigma| <= 1/2");
  }
  if (k <= 0 || l <= 0) {
    Fail(ErrorKind::kInvalidInput, "case point needs k > 0 and l > 0");
  }
}

bool InequalityReport::hkz_conditions_hold() const {
  return std::all_of(holds.begin(), holds.begin() + 5,
                     [](bool h) { return h; });
}

bool InequalityReport::consistent() const {
  if (!hkz_conditions_hold()) return true;
  return std::all_of(holds.begin(), holds.end(), [](bool h) { return h; });
}

InequalityReport CheckHkzInequalities(CasePoint const& p) {
  p.Validate();
  Rat const& lambda = p.lambda;
  Rat const& mu = p.mu;
  Rat const& sigma = p.sigma;
  Rat const& k = p.k;
  Rat const& l = p.l;
  Rat const one_minus_sigma_sq = 1 - Sq(sigma);  // ≥ 3/4 in range

  InequalityReport report;
  report.holds[0] = k + Sq(lambda) >= 1;
  report.holds[1] = l + k * Sq(sigma) + Sq(mu) >= 1;
  report.holds[2] = l + k * Sq(1 + sigma) + Sq(1 - lambda - mu) >= 1;
  report.holds[3] = l + k * Sq(1 - sigma) + Sq(lambda - mu) >= 1;
  report.holds[4] = l + k * Sq(sigma) >= k;
  Rat const floor = 1 - l / one_minus_sigma_sq;
  report.holds[5] = k <= l / one_minus_sigma_sq;
  report.holds[6] = Sq(lambda) >= floor;
  report.holds[7] = Sq(mu) >= floor;
  std::size_t const checked = report.hkz_conditions_hold() ? 8 : 5;
  for (std::size_t i = 0; i < checked; ++i) {
    if (!report.holds[i]) {
      report.first_violated = static_cast<int>(i) + 1;
      break;
    }
  }
  return report;
}

Rat DefectFromParameters(CasePoint const& p) {
  if (p.k <= 0 || p.l <= 0) {
    Fail(ErrorKind::kInvalidInput, "defect needs k > 0 and l > 0");
  }
  return (1 + Sq(p.lambda) / p.k) * (1 + (Sq(p.mu) + p.k * Sq(p.sigma)) / p.l);
}

Rat SmallSigmaEnvelope(Rat const& k, Rat const& l) {
  return (1 + 1 / (4 * k)) * (Rat(9, 8) + 1 / (4 * l));
}

SmallSigmaReport VerifySmallSigmaBound() {
  Rat const k_min(3, 4);
  Rat const l_min(2, 3);
  Rat const gamma3_cubed = HermiteConstantPower(3);

  SmallSigmaReport report;
  report.corner_value = SmallSigmaEnvelope(k_min, l_min);
  report.corner_is_gamma3_cubed = report.corner_value == gamma3_cubed;

  // Each factor is positive and strictly decreasing in its variable, so the
  // envelope is maximal at the corner; confirm on a grid.
  report.monotone = true;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      Rat const k = k_min + Frac(i, 8);
      Rat const l = l_min + Frac(j, 8);
      Rat const value = SmallSigmaEnvelope(k, l);
      if (i > 0 || j > 0) {
        ++report.interior_samples;
        if (value < gamma3_cubed) ++report.interior_strictly_below;
      }
      if (i > 0 && !(value < SmallSigmaEnvelope(k - Rat(1, 8), l))) {
        report.monotone = false;
      }
      if (j > 0 && !(value < SmallSigmaEnvelope(k, l - Rat(1, 8)))) {
        report.monotone = false;
      }
    }
  }
  Rat const huge(1000000);
  report.floor_above_9_8 = SmallSigmaEnvelope(huge, huge) > Rat(9, 8);

  // The envelope dominates Δ at every HKZ-admissible parameter point with
  // |σ| ≤ 1/3 (l + kσ² ≥ k gives k ≤ l/(1−σ²) ≤ 9l/8).
  std::vector<Rat> const ks = {Rat(3, 4), Rat(7, 8), Rat(1), Rat(5, 4),
                               Rat(3, 2), Rat(2)};
  std::vector<Rat> const ls = {Rat(2, 3), Rat(3, 4), Rat(7, 8), Rat(1),
                               Rat(5, 4), Rat(3, 2), Rat(2)};
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      for (int s = -4; s <= 4; ++s) {
        for (Rat const& k : ks) {
          for (Rat const& l : ls) {
            CasePoint const p{Frac(a, 8), Frac(b, 8), Frac(s, 12), k, l};
            if (!CheckHkzInequalities(p).hkz_conditions_hold()) continue;
            ++report.parameter_samples;
            Rat const envelope = SmallSigmaEnvelope(k, l);
            if (DefectFromParameters(p) <= envelope &&
                envelope <= gamma3_cubed) {
              ++report.parameter_within_bound;
            }
          }
        }
      }
    }
  }
  report.passed = report.corner_is_gamma3_cubed && report.monotone &&
                  report.floor_above_9_8 &&
                  report.interior_strictly_below == report.interior_samples &&
                  report.parameter_samples > 0 &&
                  report.parameter_within_bound == report.parameter_samples;
  return report;
}

std::string_view CaseName(CaseId id) {
  switch (id) {
    case CaseId::kNegKMin:
      return "NEG_KMIN";
    case CaseId::kNegKMax:
      return "NEG_KMAX";
    case CaseId::kPosKMin:
      return "POS_KMIN";
    case CaseId::kPosKMax:
      return "POS_KMAX";
  }
  return "?";
}

CaseId ParseCaseId(std::string_view name) {
  for (CaseId id : kAllCases) {
    if (CaseName(id) == name) return id;
  }
  Fail(ErrorKind::kParse, "unknown case '" + std::string(name) +
                              "' (expected NEG_KMIN, NEG_KMAX, POS_KMIN or "
                              "POS_KMAX)");
}

bool IsNegativeSigmaCase(CaseId id) {
  return id == CaseId::kNegKMin || id == CaseId::kNegKMax;
}

Rat QuadraticCase::Evaluate(Rat const& sigma) const {
  return (a * sigma + b) * sigma + c;
}

std::optional<std::pair<double, double>> QuadraticCase::Roots() const {
  double const qa = ToDouble(a);
  double const qb = ToDouble(b);
  double const qc = ToDouble(c);
  if (qa == 0) {
    if (qb == 0) return std::nullopt;
    return std::pair{-qc / qb, -qc / qb};
  }
  double const disc = qb * qb - 4 * qa * qc;
  if (disc < 0) return std::nullopt;
  double const r1 = (-qb - std::sqrt(disc)) / (2 * qa);
  double const r2 = (-qb + std::sqrt(disc)) / (2 * qa);
  return std::pair{std::min(r1, r2), std::max(r1, r2)};
}

bool InCaseRegion(CaseId id, Rat const& lambda, Rat const& mu) {
  if (lambda < 0 || lambda > kHalf || mu < 0 || mu > kHalf) return false;
  switch (id) {
    case CaseId::kNegKMin:
      // μ ≥ 1 + λ − √(λ² + 2λ), squared (both sides nonnegative).
      return lambda >= Rat(1, 4) &&
             Sq(1 + lambda - mu) <= Sq(lambda) + 2 * lambda;
    case CaseId::kNegKMax:
      return lambda + mu > 0;
    case CaseId::kPosKMin:
      return mu <= 2 * lambda;
    case CaseId::kPosKMax:
      return true;
  }
  return false;
}

QuadraticCase CaseQuadratic(CaseId id, Rat const& lambda, Rat const& mu) {
  if (!InCaseRegion(id, lambda, mu)) {
    Fail(ErrorKind::kInvalidInput,
         std::string(CaseName(id)) + ": (lambda, mu) = (" + ToString(lambda) +
             ", " + ToString(mu) + ") outside case region");
  }
  Rat const& l = lambda;
  Rat const& m = mu;
  switch (id) {
    case CaseId::kNegKMin:
    case CaseId::kPosKMin: {
      // k at its minimum 1 − λ²; l from the (1±σ)² condition.
      bool const neg = id == CaseId::kNegKMin;
      Rat const kk = 1 - Sq(l);
      Rat const offset_sq = neg ? Sq(1 - l - m) : Sq(l - m);
      Rat const linear = 2 * kk - Rat(25, 6) * Sq(kk);
      return {id, Rat(25, 12) * Sq(kk), neg ? Rat(-linear) : linear,
              1 - offset_sq - Rat(37, 12) * kk + Sq(m) +
                  Rat(25, 12) * kk * offset_sq + Rat(25, 12) * Sq(kk)};
    }
    case CaseId::kNegKMax: {
      Rat const l2 = Sq(l), l3 = l2 * l, l4 = l2 * l2;
      Rat const m2 = Sq(m), m3 = m2 * m, m4 = m2 * m2;
      Rat const a = (25 * l4 + 100 * l3 * m + 198 * l2 * m2 + 100 * l * m3 +
                     25 * m4 - 100 * l3 - 300 * l2 * m - 300 * l * m2 -
                     100 * m3 + 100 * l2 + 200 * l * m + 100 * m2) /
                    12;
      Rat const b = -2 * (l4 + 2 * l3 * m - 2 * l2 * m2 + 2 * l * m3 + m4 -
                          2 * l3 - 2 * l2 * m - 2 * l * m2 - 2 * m3);
      Rat const c = Rat(-37, 12) * l4 - Rat(25, 3) * l3 * m -
                    Rat(13, 2) * l2 * m2 - Rat(25, 3) * l * m3 -
                    Rat(37, 12) * m4 + Rat(25, 3) * l3 + 17 * l2 * m +
                    17 * l * m2 + Rat(25, 3) * m3 - Rat(13, 3) * l2 -
                    Rat(26, 3) * l * m - Rat(13, 3) * m2;
      return {id, a, b, c};
    }
    case CaseId::kPosKMax: {
      Rat const l2 = Sq(l), l3 = l2 * l, l4 = l2 * l2;
      Rat const m2 = Sq(m), m3 = m2 * m, m4 = m2 * m2;
      Rat const a = (25 * l4 - 100 * l3 * m + 198 * l2 * m2 - 100 * l * m3 +
                     25 * m4 - 50 * l2 + 100 * l * m - 50 * m2 + 25) /
                    12;
      Rat const b = 2 * (l4 - 2 * l3 * m - 2 * l2 * m2 - 2 * l * m3 + m4 - l2 -
                         m2);
      Rat const c = Rat(-37, 12) * l4 + Rat(25, 3) * l3 * m -
                    Rat(13, 2) * l2 * m2 + Rat(25, 3) * l * m3 -
                    Rat(37, 12) * m4 + Rat(25, 6) * l2 - Rat(13, 3) * l * m +
                    Rat(25, 6) * m2 - Rat(13, 12);
      return {id, a, b, c};
    }
  }
  Fail(ErrorKind::kInvalidInput, "unknown case");
}

CasePoint RealizeCasePoint(CaseId id, Rat const& lambda, Rat const& mu,
                           Rat const& sigma) {
  bool const neg = IsNegativeSigmaCase(id);
  Rat const offset_sq = neg ? Sq(1 - lambda - mu) : Sq(lambda - mu);
  Rat const slope = neg ? Sq(1 + sigma) : Sq(1 - sigma);
  CasePoint p{lambda, mu, sigma, 0, 0};
  if (id == CaseId::kNegKMin || id == CaseId::kPosKMin) {
    p.k = 1 - Sq(lambda);
    p.l = 1 - offset_sq - p.k * slope;
  } else {
    p.k = (1 - offset_sq) / (2 * (neg ? Rat(1 + sigma) : Rat(1 - sigma)));
    p.l = p.k * (1 - Sq(sigma));
  }
  return p;
}

std::vector<CasePoint> DocumentedEqualityPoints(CaseId id) {
  switch (id) {
    case CaseId::kNegKMax:
      return {RealizeCasePoint(id, kHalf, kHalf, -kHalf)};
    case CaseId::kPosKMax:
      return {RealizeCasePoint(id, kHalf, kHalf, kHalf)};
    default:
      return {};
  }
}

namespace {

Rat ValidatedGridCount(Rat const& step) {
  if (step <= 0) Fail(ErrorKind::kInvalidInput, "grid step must be positive");
  Rat const count = kHalf / step;
  if (count.get_den() != 1) {
    Fail(ErrorKind::kInvalidInput,
         "grid step " + ToString(step) + " does not divide 1/2");
  }
  return count;
}

std::vector<Rat> SigmaGrid(CaseId id, Rat const& step) {
  std::vector<Rat> sigmas;
  if (IsNegativeSigmaCase(id)) {
    for (Rat s = -kHalf; s <= -kThird; s += step) sigmas.push_back(s);
    if (sigmas.back() != -kThird) sigmas.push_back(-kThird);
  } else {
    for (Rat s = kHalf; s >= kThird; s -= step) sigmas.push_back(s);
    if (sigmas.back() != kThird) sigmas.push_back(kThird);
    std::reverse(sigmas.begin(), sigmas.end());
  }
  return sigmas;
}

struct PartialScan {
  std::uint64_t points = 0;
  std::uint64_t cells = 0;
  std::optional<Rat> min_lambda;
  std::optional<std::pair<Rat, CasePoint>> max;
  std::vector<CasePoint> equalities;
  std::vector<CasePoint> violations;
  std::uint64_t violation_count = 0;
};

void MergeMax(std::optional<std::pair<Rat, CasePoint>>& into,
              std::pair<Rat, CasePoint> const& candidate) {
  if (!into || candidate.first > into->first ||
      (candidate.first == into->first &&
       PointLess(candidate.second, into->second))) {
    into = candidate;
  }
}

}  // namespace

CaseScanReport ScanCase(CaseId id, Rat const& step,
                        ScanOptions const& options) {
  auto const start = std::chrono::steady_clock::now();
  std::size_t const count = ValidatedGridCount(step).get_num().get_ui();
  std::vector<Rat> const sigmas = SigmaGrid(id, step);
  QuadraticProvider const provider =
      options.provider ? options.provider : QuadraticProvider(CaseQuadratic);

  std::vector<PartialScan> partials(count + 1);
  auto scan_row = [&](std::size_t i) {
    PartialScan& part = partials[i];
    Rat const lambda = Rat(static_cast<long>(i)) * step;
    for (std::size_t j = 0; j <= count; ++j) {
      Rat const mu = Rat(static_cast<long>(j)) * step;
      if (!InCaseRegion(id, lambda, mu)) continue;
      ++part.cells;
      if (!part.min_lambda) part.min_lambda = lambda;
      QuadraticCase const q = provider(id, lambda, mu);
      for (Rat const& sigma : sigmas) {
        Rat const value = q.Evaluate(sigma);
        ++part.points;
        bool const is_max_candidate =
            !part.max || value >= part.max->first;
        if (value > 0) {
          ++part.violation_count;
          if (part.violations.size() < options.max_recorded) {
            part.violations.push_back(RealizeCasePoint(id, lambda, mu, sigma));
          }
        } else if (value == 0) {
          part.equalities.push_back(RealizeCasePoint(id, lambda, mu, sigma));
        }
        if (is_max_candidate) {
          MergeMax(part.max, {value, RealizeCasePoint(id, lambda, mu, sigma)});
        }
      }
    }
  };
  ParallelFor(count + 1, options.workers, scan_row);

  CaseScanReport report;
  report.id = id;
  report.grid_step = step;
  std::optional<std::pair<Rat, CasePoint>> max;
  for (PartialScan const& part : partials) {
    report.points_checked += part.points;
    report.cells_visited += part.cells;
    // First nonempty partial has the smallest λ.
    if (part.min_lambda && report.cells_visited == part.cells) {
      report.min_lambda_visited = *part.min_lambda;
    }
    if (part.max) MergeMax(max, *part.max);
    report.equality_points.insert(report.equality_points.end(),
                                  part.equalities.begin(),
                                  part.equalities.end());
    report.violation_count += part.violation_count;
    for (CasePoint const& v : part.violations) {
      if (report.violations.size() < options.max_recorded) {
        report.violations.push_back(v);
      }
    }
  }
  if (max) {
    report.max_value = max->first;
    report.argmax = max->second;
    report.roots_at_argmax =
        provider(id, report.argmax.lambda, report.argmax.mu).Roots();
  }
  std::sort(report.equality_points.begin(), report.equality_points.end(),
            PointLess);

  std::vector<CasePoint> const documented = DocumentedEqualityPoints(id);
  bool const equalities_documented = std::all_of(
      report.equality_points.begin(), report.equality_points.end(),
      [&](CasePoint const& p) {
        return std::find(documented.begin(), documented.end(), p) !=
               documented.end();
      });
  report.passed = report.points_checked > 0 && report.violation_count == 0 &&
                  equalities_documented;
  report.wall_time_seconds = Seconds(start);
  return report;
}

ConsistencyReport CheckBoundConsistency(CaseId id, Rat const& step,
                                        std::size_t samples,
                                        std::uint64_t seed) {
  std::size_t const count = ValidatedGridCount(step).get_num().get_ui();
  std::vector<Rat> const sigmas = SigmaGrid(id, step);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> grid(0, count);
  std::uniform_int_distribution<std::size_t> sigma_index(0, sigmas.size() - 1);

  ConsistencyReport report;
  report.id = id;
  std::size_t attempts = 0;
  while (report.samples < samples && attempts < 1000 * samples) {
    ++attempts;
    Rat const lambda = Rat(static_cast<long>(grid(rng))) * step;
    Rat const mu = Rat(static_cast<long>(grid(rng))) * step;
    Rat const& sigma = sigmas[sigma_index(rng)];
    if (!InCaseRegion(id, lambda, mu)) continue;
    CasePoint const p = RealizeCasePoint(id, lambda, mu, sigma);
    if (p.k <= 0 || p.l <= 0) continue;
    ++report.samples;
    int const q_sign = sgn(CaseQuadratic(id, lambda, mu).Evaluate(sigma));
    int const bound_sign = sgn(Rat(DefectFromParameters(p) - kTarget));
    if (q_sign == bound_sign) ++report.agreements;
  }
  report.passed = report.samples == samples && report.agreements == samples;
  return report;
}

std::string_view BranchName(ConvexBranch branch) {
  return branch == ConvexBranch::kNegativeSigma ? "f" : "F";
}

Rat BranchFunction(ConvexBranch branch, CasePoint const& p) {
  BranchTerms const t = Terms(branch, p);
  if (p.k <= 0 || t.denom <= 0) {
    Fail(ErrorKind::kInvalidInput, "outside case region: k = " +
                                       ToString(p.k) + ", D(k) = " +
                                       ToString(t.denom));
  }
  return (1 + Sq(p.lambda) / p.k) * (1 + t.numer / t.denom);
}

Rat ConvexityNumerator(ConvexBranch branch, CasePoint const& p) {
  BranchTerms const t = Terms(branch, p);
  if (p.k <= 0 || t.denom <= 0) {
    Fail(ErrorKind::kInvalidInput, "outside case region: k = " +
                                       ToString(p.k) + ", D(k) = " +
                                       ToString(t.denom));
  }
  // f = u·v with u = 1 + λ²/k and v = 1 + N/D. N and D are affine in k, so
  // (N/D)' = W/D² with the constant W = N'D − ND' = σ²(1 − offset²) +
  // slope·μ², and (N/D)'' = 2·slope·W/D³. Then k³D³(u''v + 2u'v' + uv'').
  Rat const lambda_sq = Sq(p.lambda);
  Rat const w = Sq(p.sigma) * (1 - t.offset_sq) + t.slope * Sq(p.mu);
  Rat const& d = t.denom;
  return 2 * lambda_sq * Sq(d) * (d + t.numer) -
         2 * lambda_sq * p.k * w * d +
         2 * t.slope * w * Sq(p.k) * (p.k + lambda_sq);
}

Rat ExpandedNumeratorFirstForm(ConvexBranch branch, CasePoint const& p) {
  BranchTerms const t = Terms(branch, p);
  Rat const l2 = Sq(p.lambda);
  Rat const& k = p.k;
  Rat const s2 = Sq(p.sigma);
  Rat const& c = t.slope;
  Rat const& n = t.numer;
  Rat const& d = t.denom;
  Rat const k2 = k * k, k3 = k2 * k;
  Rat value = 2 * l2 * n * Sq(d) + 2 * l2 * d * d * d -
              2 * l2 * k * c * n * d - 2 * k * l2 * s2 * Sq(d) +
              2 * l2 * k2 * Sq(c) * n + 2 * k3 * Sq(c) * n +
              2 * l2 * k2 * s2 * c * d;
  // The last term carries the factor D(k) only in the F expansion.
  value += branch == ConvexBranch::kNegativeSigma ? Rat(2 * k3 * s2 * c)
                                                  : Rat(2 * k3 * s2 * c * d);
  return value;
}

Rat ExpandedNumeratorSecondForm(ConvexBranch branch, CasePoint const& p) {
  BranchTerms const t = Terms(branch, p);
  Rat const& lambda = p.lambda;
  Rat const l2 = Sq(lambda);
  Rat const& k = p.k;
  Rat const s2 = Sq(p.sigma);
  Rat const& c = t.slope;
  Rat const& n = t.numer;
  Rat const& d = t.denom;
  Rat const base = 1 - t.offset_sq;
  Rat const k2 = k * k, k3 = k2 * k;
  Rat const mixed = 2 * s2 * c - s2 * s2;  // 2σ²(1±σ)² − σ⁴
  if (branch == ConvexBranch::kNegativeSigma) {
    return l2 * n * Sq(base - 2 * k * c) + l2 * d * Sq(base - k * (c + s2)) +
           l2 * n * Sq(d) + l2 * d * d * d + l2 * k2 * Sq(c) * n +
           2 * k3 * Sq(c) * n + l2 * k2 * mixed * d + 2 * k3 * s2 * c;
  }
  // Leading coefficient is λ here, not λ².
  return lambda * n * Sq(base - 2 * k * c) +
         l2 * d * Sq(base - k * (c + s2)) + l2 * n * Sq(d) + l2 * d * d * d +
         l2 * k2 * Sq(c) * n + 2 * k3 * Sq(c) * n + l2 * k2 * s2 * c * d +
         k3 * mixed * d + 2 * k3 * s2 * c * d;
}

Rat SecondDifference(ConvexBranch branch, CasePoint const& p, Rat const& h) {
  CasePoint lo = p;
  CasePoint hi = p;
  lo.k -= h;
  hi.k += h;
  return (BranchFunction(branch, hi) - 2 * BranchFunction(branch, p) +
          BranchFunction(branch, lo)) /
         Sq(h);
}

namespace {

double BranchFunctionDouble(ConvexBranch branch, double lambda, double mu,
                            double sigma, double k) {
  bool const neg = branch == ConvexBranch::kNegativeSigma;
  double const offset = neg ? 1 - lambda - mu : lambda - mu;
  double const slope = neg ? (1 + sigma) * (1 + sigma) : (1 - sigma) * (1 - sigma);
  double const d = 1 - offset * offset - k * slope;
  return (1 + lambda * lambda / k) * (1 + (mu * mu + k * sigma * sigma) / d);
}

}  // namespace

ConvexityCertificate SampleConvexity(ConvexBranch branch,
                                     std::size_t per_axis) {
  if (per_axis < 2) {
    Fail(ErrorKind::kInvalidInput, "convexity sampling needs >= 2 per axis");
  }
  bool const neg = branch == ConvexBranch::kNegativeSigma;
  long const m = static_cast<long>(per_axis);
  ConvexityCertificate cert;
  cert.which = branch;
  cert.numerators_nonnegative = true;
  cert.second_differences_nonnegative = true;
  cert.float_cross_check = true;
  cert.richardson_agrees = true;

  for (long i = 0; i < m; ++i) {
    Rat const lambda = Frac(i, 2 * (m - 1));
    for (long j = 0; j < m; ++j) {
      Rat const mu = Frac(j, 2 * (m - 1));
      for (long s = 0; s < m; ++s) {
        Rat const sigma = neg ? Rat(-kHalf + Frac(s, 6 * (m - 1)))
                              : Rat(kThird + Frac(s, 6 * (m - 1)));
        Rat const offset_sq = neg ? Sq(1 - lambda - mu) : Sq(lambda - mu);
        Rat const k_min = 1 - Sq(lambda);
        Rat const k_max =
            (1 - offset_sq) / (2 * (neg ? Rat(1 + sigma) : Rat(1 - sigma)));
        cert.grid_points += per_axis;
        if (k_max <= k_min) continue;
        Rat const range = k_max - k_min;
        Rat const h = range / 1000;
        for (long u = 0; u < m; ++u) {
          CasePoint const p{lambda, mu, sigma,
                            k_min + range * Frac(u + 1, m + 1), 0};
          ConvexitySample sample{p, ConvexityNumerator(branch, p),
                                 SecondDifference(branch, p, h)};
          Rat const d = Terms(branch, p).denom;
          sample.closed_form =
              ToDouble(sample.numerator / (p.k * p.k * p.k * d * d * d));
          Rat const half_step = SecondDifference(branch, p, h / 2);
          sample.richardson =
              ToDouble((4 * half_step - sample.second_difference) / 3);

          double const lf = ToDouble(lambda), mf = ToDouble(mu),
                       sf = ToDouble(sigma), kf = ToDouble(p.k),
                       hf = ToDouble(h);
          sample.float_second_difference =
              (BranchFunctionDouble(branch, lf, mf, sf, kf + hf) -
               2 * BranchFunctionDouble(branch, lf, mf, sf, kf) +
               BranchFunctionDouble(branch, lf, mf, sf, kf - hf)) /
              (hf * hf);

          if (sample.numerator < 0) cert.numerators_nonnegative = false;
          if (sample.second_difference < 0) {
            cert.second_differences_nonnegative = false;
          }
          if (sample.float_second_difference < -1e-12) {
            cert.float_cross_check = false;
          }
          if (std::abs(sample.richardson - sample.closed_form) >
              1e-6 * std::max(1.0, std::abs(sample.closed_form))) {
            cert.richardson_agrees = false;
          }
          if (ExpandedNumeratorFirstForm(branch, p) == sample.numerator) {
            ++cert.first_form_agreements;
          }
          if (ExpandedNumeratorSecondForm(branch, p) == sample.numerator) {
            ++cert.second_form_agreements;
          }
          cert.samples.push_back(std::move(sample));
        }
      }
    }
  }
  cert.passed = !cert.samples.empty() && cert.numerators_nonnegative &&
                cert.second_differences_nonnegative &&
                cert.float_cross_check && cert.richardson_agrees;
  return cert;
}

GramMatrix ExtremalGram(int sign, Rat const& scale) {
  Rat const cross = Rat(1, 4) + Rat(sign > 0 ? 1 : -1, 2);
  Matrix<Rat> g = {{1, kHalf, kHalf},
                   {kHalf, Rat(5, 4), cross},
                   {kHalf, cross, Rat(5, 4)}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) g(i, j) *= scale;
  }
  return GramMatrix(std::move(g));
}

ExtremalFormReport VerifyExtremalForm() {
  ExtremalFormReport report;
  report.passed = true;
  auto add = [&](std::string name, GramMatrix g) {
    HkzCertificate const cert = IsHkzReduced(g);
    Rat const defect = OrthogonalityDefect(g);
    report.passed = report.passed && cert.reduced && defect == kTarget;
    report.variants.push_back(
        {std::move(name), std::move(g), cert.reduced, cert.failure, defect});
  };
  add("plus", ExtremalGram(+1));
  add("minus", ExtremalGram(-1));
  add("plus_scaled_4", ExtremalGram(+1, Rat(4)));
  return report;
}

ProofCertificate VerifyProof(ProofOptions const& options) {
  auto const start = std::chrono::steady_clock::now();
  ProofCertificate cert;
  cert.step = options.step;

  ScanOptions scan;
  scan.workers = options.workers;
  if (options.inject_fault) {
    scan.provider = [](CaseId id, Rat const& lambda, Rat const& mu) {
      QuadraticCase q = CaseQuadratic(id, lambda, mu);
      if (id == CaseId::kNegKMax) q.c += Rat(1, 1000);
      return q;
    };
  }
  for (CaseId id : kAllCases) {
    if (options.only_case && *options.only_case != id) continue;
    cert.cases.push_back(ScanCase(id, options.step, scan));
    cert.consistency.push_back(CheckBoundConsistency(
        id, options.step, options.consistency_samples, options.seed));
  }
  cert.small_sigma = VerifySmallSigmaBound();
  cert.convexity.push_back(SampleConvexity(ConvexBranch::kNegativeSigma));
  cert.convexity.push_back(SampleConvexity(ConvexBranch::kPositiveSigma));
  cert.extremal = VerifyExtremalForm();

  cert.passed = cert.small_sigma.passed && cert.extremal.passed;
  for (auto const& c : cert.cases) cert.passed = cert.passed && c.passed;
  for (auto const& c : cert.consistency) cert.passed = cert.passed && c.passed;
  for (auto const& c : cert.convexity) cert.passed = cert.passed && c.passed;
  cert.wall_time_seconds = Seconds(start);
  return cert;
}

namespace {

nlohmann::json PointJson(CasePoint const& p) {
  return {{"lambda", ToString(p.lambda)}, {"mu", ToString(p.mu)},
          {"sigma", ToString(p.sigma)},   {"k", ToString(p.k)},
          {"l", ToString(p.l)}};
}

nlohmann::json PointsJson(std::vector<CasePoint> const& points) {
  nlohmann::json out = nlohmann::json::array();
  for (CasePoint const& p : points) out.push_back(PointJson(p));
  return out;
}

}  // namespace

nlohmann::json ProofCertificateJson(ProofCertificate const& cert) {
  nlohmann::json cases = nlohmann::json::array();
  for (CaseScanReport const& c : cert.cases) {
    nlohmann::json roots = nullptr;
    if (c.roots_at_argmax) {
      roots = {c.roots_at_argmax->first, c.roots_at_argmax->second};
    }
    cases.push_back({
        {"case", CaseName(c.id)},
        {"grid_step", ToString(c.grid_step)},
        {"points_checked", c.points_checked},
        {"cells_visited", c.cells_visited},
        {"min_lambda_visited", ToString(c.min_lambda_visited)},
        {"max_value", ToString(c.max_value)},
        {"max_value_decimal", ToDecimal(c.max_value)},
        {"argmax", PointJson(c.argmax)},
        {"roots_at_argmax", roots},
        {"equality_points", PointsJson(c.equality_points)},
        {"violations", PointsJson(c.violations)},
        {"violation_count", c.violation_count},
        {"wall_time", c.wall_time_seconds},
        {"passed", c.passed},
    });
  }
  nlohmann::json consistency = nlohmann::json::array();
  for (ConsistencyReport const& c : cert.consistency) {
    consistency.push_back({{"case", CaseName(c.id)},
                           {"samples", c.samples},
                           {"agreements", c.agreements},
                           {"passed", c.passed}});
  }
  nlohmann::json convexity = nlohmann::json::array();
  for (ConvexityCertificate const& c : cert.convexity) {
    Rat min_numerator = c.samples.empty() ? Rat(0) : c.samples[0].numerator;
    double min_float = c.samples.empty() ? 0 : c.samples[0].float_second_difference;
    for (ConvexitySample const& s : c.samples) {
      min_numerator = std::min(min_numerator, s.numerator);
      min_float = std::min(min_float, s.float_second_difference);
    }
    convexity.push_back({
        {"function", BranchName(c.which)},
        {"grid_points", c.grid_points},
        {"samples", c.samples.size()},
        {"min_numerator", RationalJson(min_numerator)},
        {"min_float_second_difference", min_float},
        {"numerators_nonnegative", c.numerators_nonnegative},
        {"second_differences_nonnegative", c.second_differences_nonnegative},
        {"float_cross_check", c.float_cross_check},
        {"richardson_agrees", c.richardson_agrees},
        {"expanded_first_form_agreements", c.first_form_agreements},
        {"expanded_second_form_agreements", c.second_form_agreements},
        {"passed", c.passed},
    });
  }
  nlohmann::json extremal = nlohmann::json::array();
  for (ExtremalVariant const& v : cert.extremal.variants) {
    extremal.push_back({{"variant", v.name},
                        {"gram", MatrixJson(v.gram.entries())},
                        {"hkz_reduced", v.hkz_reduced},
                        {"defect", ToString(v.defect)}});
  }
  SmallSigmaReport const& s = cert.small_sigma;
  return {
      {"method",
       "exact rational evaluation at every grid point; no claim is made "
       "between grid points"},
      {"step", ToString(cert.step)},
      {"cases", cases},
      {"consistency", consistency},
      {"small_sigma",
       {{"corner_value", ToString(s.corner_value)},
        {"corner_is_gamma3_cubed", s.corner_is_gamma3_cubed},
        {"interior_samples", s.interior_samples},
        {"interior_strictly_below", s.interior_strictly_below},
        {"monotone", s.monotone},
        {"parameter_samples", s.parameter_samples},
        {"parameter_within_bound", s.parameter_within_bound},
        {"passed", s.passed}}},
      {"convexity", convexity},
      {"extremal_form", extremal},
      {"wall_time", cert.wall_time_seconds},
      {"passed", cert.passed},
  };
}

}  // namespace hkz
