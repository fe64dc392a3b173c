#include "hkz/reduction.hpp"

#include <algorithm>
#include <utility>

#include "enumeration.hpp"
#include "hkz/error.hpp"

namespace hkz {

namespace {

// A basis under construction: its Gram matrix together with the integer
// transform taking the original basis to it.
struct WorkingBasis {
  Matrix<Rat> g;
  Matrix<Integer> t;

  explicit WorkingBasis(Matrix<Rat> gram)
      : g(std::move(gram)), t(Matrix<Integer>::Identity(g.rows())) {}

  std::size_t rank() const { return g.rows(); }

  // b_i ← b_i − q·b_j.
  void SubtractMultiple(std::size_t i, std::size_t j, Integer const& q) {
    Rat const rq(q);
    Rat const gii = g(i, i) - 2 * rq * g(i, j) + rq * rq * g(j, j);
    for (std::size_t k = 0; k < rank(); ++k) {
      if (k == i) continue;
      g(i, k) -= rq * g(j, k);
      g(k, i) = g(i, k);
    }
    g(i, i) = gii;
    for (std::size_t k = 0; k < rank(); ++k) t(i, k) -= q * t(j, k);
  }

  void Swap(std::size_t i, std::size_t j) {
    g.SwapRows(i, j);
    for (std::size_t k = 0; k < rank(); ++k) std::swap(g(k, i), g(k, j));
    t.SwapRows(i, j);
  }

  void Negate(std::size_t i) {
    for (std::size_t k = 0; k < rank(); ++k) {
      if (k == i) continue;
      g(i, k) = -g(i, k);
      g(k, i) = g(i, k);
    }
    for (std::size_t k = 0; k < rank(); ++k) t(i, k) = -t(i, k);
  }

  // Replaces rows first.. by block·(rows first..).
  void ApplyBlock(std::size_t first, Matrix<Integer> const& block) {
    Matrix<Integer> u = Matrix<Integer>::Identity(rank());
    for (std::size_t a = 0; a < block.rows(); ++a) {
      for (std::size_t b = 0; b < block.cols(); ++b) {
        u(first + a, first + b) = block(a, b);
      }
    }
    Matrix<Rat> const ug = Multiply(u, g);
    Matrix<Rat> const ut = Multiply(u, ug.Transposed());
    g = ut;  // U·G·Uᵀ is symmetric, so (U·(U·G)ᵀ) is the same matrix.
    t = Multiply(u, t);
  }
};

// Size-reduces row i against rows j < i, keeping `gso.mu` current.
void SizeReduceRow(WorkingBasis& w, GSOData& gso, std::size_t i) {
  static Rat const half(1, 2);
  for (std::size_t j = i; j-- > 0;) {
    if (Abs(gso.mu(i, j)) <= half) continue;
    Integer const q = Round(gso.mu(i, j));
    w.SubtractMultiple(i, j, q);
    for (std::size_t k = 0; k < j; ++k) gso.mu(i, k) -= Rat(q) * gso.mu(j, k);
    gso.mu(i, j) -= Rat(q);
  }
}

void SizeReduceInPlace(WorkingBasis& w) {
  GSOData gso = Ldl(w.g);
  for (std::size_t i = 1; i < w.rank(); ++i) SizeReduceRow(w, gso, i);
}

// Exact LLL with δ = 99/100 on rows first.. (rows before `first` are never
// moved). Only used to shorten enumeration radii.
void LllInPlace(WorkingBasis& w, std::size_t first) {
  static Rat const delta(99, 100);
  GSOData gso = Ldl(w.g);
  std::size_t k = first + 1;
  while (k < w.rank()) {
    SizeReduceRow(w, gso, k);
    Rat const mu = gso.mu(k, k - 1);
    if (gso.bstar[k] >= (delta - mu * mu) * gso.bstar[k - 1]) {
      ++k;
      continue;
    }
    w.Swap(k, k - 1);
    gso = Ldl(w.g);
    k = std::max(k - 1, first + 1);
  }
}

// Flips b_i so that its first nonzero μ_{i,j} is positive, for i = 2..n.
void NormalizeSigns(WorkingBasis& w) {
  for (std::size_t i = 1; i < w.rank(); ++i) {
    GSOData const gso = Ldl(w.g);
    for (std::size_t j = 0; j < i; ++j) {
      if (gso.mu(i, j) == 0) continue;
      if (gso.mu(i, j) < 0) w.Negate(i);
      break;
    }
  }
}

// (|x_n|, …, |x_1|) lexicographically, then x itself.
bool TieBreakLess(IntVector const& a, IntVector const& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    int const c = mpz_cmpabs(a[i].get_mpz_t(), b[i].get_mpz_t());
    if (c != 0) return c < 0;
  }
  return a < b;
}

IntVector RowTimes(IntVector const& x, Matrix<Integer> const& t) {
  IntVector y(t.cols(), Integer(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < t.cols(); ++j) y[j] += x[i] * t(i, j);
  }
  return y;
}

// A unimodular matrix whose first row is the primitive vector x. Column
// operations reduce x to e_1 (x·W = e_1); the inverse of W, accumulated
// directly, then has x as its first row.
Matrix<Integer> CompleteToUnimodular(IntVector const& x) {
  std::size_t const m = x.size();
  IntVector v = x;
  Matrix<Integer> inverse = Matrix<Integer>::Identity(m);
  while (true) {
    std::size_t pivot = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (v[i] != 0 && (pivot == m || mpz_cmpabs(v[i].get_mpz_t(), v[pivot].get_mpz_t()) < 0)) pivot = i;
    }
    bool done = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == pivot || v[j] == 0) continue;
      done = false;
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), v[j].get_mpz_t(), v[pivot].get_mpz_t());
      // column j −= q·column pivot; inverse: row pivot += q·row j.
      v[j] -= q * v[pivot];
      for (std::size_t c = 0; c < m; ++c) inverse(pivot, c) += q * inverse(j, c);
    }
    if (done) {
      if (v[pivot] != 1 && v[pivot] != -1) {
        Fail(ErrorKind::kInvalidInput, "coefficient vector is not primitive");
      }
      inverse.SwapRows(0, pivot);
      if (v[pivot] == -1) {
        for (std::size_t c = 0; c < m; ++c) inverse(0, c) = -inverse(0, c);
      }
      return inverse;
    }
  }
}

Matrix<Rat> ProjectedEntries(GSOData const& gso, std::size_t first) {
  std::size_t const n = gso.rank();
  std::size_t const m = n - first;
  Matrix<Rat> p(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      Rat sum = 0;
      for (std::size_t k = first; k <= first + b; ++k) {
        sum += gso.mu(first + a, k) * gso.mu(first + b, k) * gso.bstar[k];
      }
      p(a, b) = sum;
      p(b, a) = sum;
    }
  }
  return p;
}

bool IsUnitVector(IntVector const& x) {
  if (x.empty() || x[0] != 1) return false;
  return std::all_of(x.begin() + 1, x.end(),
                     [](Integer const& v) { return v == 0; });
}

// Row-echelon accumulator for exact independence tests.
class IndependenceTracker {
 public:
  // Returns true (and records x) iff x is independent of the vectors so far.
  bool Add(IntVector const& x) {
    std::vector<Rat> v(x.begin(), x.end());
    for (auto const& [pivot, row] : rows_) {
      if (v[pivot] == 0) continue;
      Rat const f = v[pivot] / row[pivot];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * row[j];
    }
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] != 0) {
        rows_.emplace_back(j, std::move(v));
        return true;
      }
    }
    return false;
  }

 private:
  std::vector<std::pair<std::size_t, std::vector<Rat>>> rows_;
};

}  // namespace

IntVector SignNormalized(IntVector x) {
  for (Integer const& v : x) {
    if (v == 0) continue;
    if (v < 0) {
      for (Integer& w : x) w = -w;
    }
    break;
  }
  return x;
}

SizeReduction SizeReduce(GramMatrix const& g) {
  WorkingBasis w(g.entries());
  SizeReduceInPlace(w);
  return {GramMatrix(std::move(w.g)), Unimodular(std::move(w.t))};
}

ShortestVectorResult ShortestVector(GramMatrix const& g) {
  WorkingBasis w(g.entries());
  LllInPlace(w, 0);
  GSOData const gso = Ldl(w.g);

  internal::Enumerator enumerator(gso);
  Rat bound = gso.bstar[0];
  std::optional<Rat> best_norm;
  IntVector best;
  enumerator.Run(bound, [&](IntVector const& x, Rat const& norm) {
    IntVector candidate = SignNormalized(RowTimes(x, w.t));
    if (!best_norm || norm < *best_norm ||
        (norm == *best_norm && TieBreakLess(candidate, best))) {
      best_norm = norm;
      best = std::move(candidate);
      bound = norm;
    }
  });
  return {std::move(best), *best_norm, enumerator.nodes()};
}

GramMatrix ProjectedGram(GSOData const& gso, std::size_t first) {
  if (first >= gso.rank()) {
    Fail(ErrorKind::kInvalidInput,
         "projection index " + std::to_string(first + 1) + " out of range 1.." +
             std::to_string(gso.rank()));
  }
  return GramMatrix(ProjectedEntries(gso, first));
}

GramMatrix ProjectedGram(GramMatrix const& g, std::size_t first) {
  return ProjectedGram(Ldl(g), first);
}

ReductionReport HkzReduce(GramMatrix const& g) {
  std::size_t const n = g.rank();
  WorkingBasis w(g.entries());
  std::uint64_t svp_calls = 0;
  std::uint64_t nodes = 0;

  LllInPlace(w, 0);
  for (std::size_t level = 0; level + 1 < n; ++level) {
    GSOData const gso = Ldl(w.g);
    ShortestVectorResult const sv =
        ShortestVector(GramMatrix(ProjectedEntries(gso, level)));
    ++svp_calls;
    nodes += sv.nodes_visited;
    if (!IsUnitVector(sv.coeffs)) {
      w.ApplyBlock(level, CompleteToUnimodular(sv.coeffs));
    }
    LllInPlace(w, level + 1);
  }
  SizeReduceInPlace(w);
  NormalizeSigns(w);
  return {GramMatrix(std::move(w.g)), Unimodular(std::move(w.t)), svp_calls,
          nodes};
}

HkzCertificate IsHkzReduced(GramMatrix const& g) {
  static Rat const half(1, 2);
  GSOData const gso = Ldl(g);
  std::size_t const n = g.rank();
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (Abs(gso.mu(i, j)) > half) {
        return {false,
                "not size reduced: mu(" + std::to_string(i + 1) + "," +
                    std::to_string(j + 1) + ") = " + ToString(gso.mu(i, j)),
                j};
      }
    }
  }
  for (std::size_t level = 0; level < n; ++level) {
    ShortestVectorResult const sv =
        ShortestVector(GramMatrix(ProjectedEntries(gso, level)));
    if (sv.norm_sq < gso.bstar[level]) {
      std::string const which =
          level == 0 ? std::string("b1 not shortest")
                     : "b" + std::to_string(level + 1) + "(" +
                           std::to_string(level + 1) +
                           ") not shortest in projected lattice";
      return {false,
              which + ": found norm " + ToString(sv.norm_sq) + " < " +
                  ToString(gso.bstar[level]),
              level};
    }
  }
  return {true, "", std::nullopt};
}

SuccessiveMinima ComputeSuccessiveMinima(GramMatrix const& g) {
  std::size_t const n = g.rank();
  if (n > kMaxMinimaRank) {
    Fail(ErrorKind::kUnsupported,
         "minima enumeration unsupported above rank " +
             std::to_string(kMaxMinimaRank));
  }
  ReductionReport const report = HkzReduce(g);
  GSOData const gso = Ldl(report.reduced);
  Rat bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bound = std::max(bound, report.reduced(i, i));
  }

  std::vector<std::pair<Rat, IntVector>> found;
  internal::Enumerator enumerator(gso);
  enumerator.Run(bound, [&](IntVector const& x, Rat const& norm) {
    found.emplace_back(norm,
                       SignNormalized(RowTimes(x, report.transform.entries())));
  });
  std::sort(found.begin(), found.end(), [](auto const& a, auto const& b) {
    if (a.first != b.first) return a.first < b.first;
    return TieBreakLess(a.second, b.second);
  });

  SuccessiveMinima minima;
  IndependenceTracker tracker;
  for (auto& [norm, x] : found) {
    if (minima.minima_sq.size() == n) break;
    if (tracker.Add(x)) {
      minima.minima_sq.push_back(norm);
      minima.witnesses.push_back(std::move(x));
    }
  }
  if (minima.minima_sq.size() != n) {
    Fail(ErrorKind::kVerification, "minima enumeration found too few vectors");
  }
  return minima;
}

Rat BasisBoundReport::TightestRatio(std::string const& family) const {
  Rat best = 0;
  for (BasisBoundCheck const& c : checks) {
    if (c.family == family) best = std::max(best, Rat(c.lhs / c.rhs));
  }
  return best;
}

BasisBoundReport CheckBasisBounds(GramMatrix const& g) {
  std::size_t const n = g.rank();
  if (n > kMaxMinimaRank) {
    Fail(ErrorKind::kUnsupported,
         "minima enumeration unsupported above rank " +
             std::to_string(kMaxMinimaRank));
  }
  HkzCertificate const certificate = IsHkzReduced(g);
  if (!certificate.reduced) {
    Fail(ErrorKind::kInvalidInput,
         "input not HKZ reduced: " + certificate.failure);
  }
  GSOData const gso = Ldl(g);
  BasisBoundReport report;
  report.minima = ComputeSuccessiveMinima(g);
  auto const& lambda_sq = report.minima.minima_sq;

  auto add = [&](std::string family, std::size_t index, Rat lhs, Rat rhs) {
    bool const holds = lhs <= rhs;
    report.all_hold = report.all_hold && holds;
    report.checks.push_back(
        {std::move(family), index, std::move(lhs), std::move(rhs), holds});
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t const one_based = i + 1;
    if (i + 1 < n) {
      add("gso_adjacent", one_based, gso.bstar[i],
          Rat(4, 3) * gso.bstar[i + 1]);
    }
    if (i + 2 < n) {
      add("gso_skip", one_based, gso.bstar[i], Rat(3, 2) * gso.bstar[i + 2]);
    }
    Rat const i3(static_cast<long>(one_based) + 3);
    add("norm_lower", one_based, 4 / i3 * lambda_sq[i], g(i, i));
    add("norm_upper", one_based, g(i, i), i3 / 4 * lambda_sq[i]);
    add("gso_vs_minima", one_based, gso.bstar[i], lambda_sq[i]);
  }
  return report;
}

}  // namespace hkz
