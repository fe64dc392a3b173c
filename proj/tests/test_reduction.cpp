#include <gtest/gtest.h>

#include "hkz/bounds.hpp"
#include "hkz/error.hpp"
#include "hkz/reduction.hpp"
#include "oracles.hpp"

namespace hkz {
namespace {

GramMatrix Extremal() {
  return GramMatrix({{1, Rat(1, 2), Rat(1, 2)},
                     {Rat(1, 2), Rat(5, 4), Rat(3, 4)},
                     {Rat(1, 2), Rat(3, 4), Rat(5, 4)}});
}

GramMatrix A2() { return GramMatrix({{1, Rat(1, 2)}, {Rat(1, 2), 1}}); }

// Random instance whose shortest vectors provably lie in |x_i| ≤ 5.
std::optional<GramMatrix> BoxedInstance(std::size_t n, std::uint64_t seed) {
  Matrix<Rat> g = oracle::RandomGram(n, seed, 10);
  for (long b : oracle::SafeBox(g, g(0, 0))) {
    if (b > 5) return std::nullopt;
  }
  return GramMatrix(std::move(g));
}

TEST(SizeReduce, Examples) {
  SizeReduction id = SizeReduce(GramMatrix::Identity(3));
  EXPECT_EQ(id.reduced, GramMatrix::Identity(3));
  EXPECT_EQ(id.transform, Unimodular::Identity(3));

  SizeReduction r = SizeReduce(GramMatrix({{1, 3}, {3, 10}}));
  EXPECT_EQ(r.reduced, GramMatrix::Identity(2));
  EXPECT_EQ(r.transform.entries(), (Matrix<Integer>{{1, 0}, {-3, 1}}));

  EXPECT_EQ(SizeReduce(Extremal()).reduced, Extremal());
}

TEST(SizeReduce, BoundsMuAndKeepsBstar) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GramMatrix const g(oracle::RandomGram(2 + seed % 4, seed, 10));
    SizeReduction const r = SizeReduce(g);
    EXPECT_EQ(ApplyUnimodular(g, r.transform), r.reduced);
    GSOData const before = Ldl(g), after = Ldl(r.reduced);
    EXPECT_EQ(before.bstar, after.bstar);
    for (std::size_t i = 0; i < after.rank(); ++i) {
      for (std::size_t j = 0; j < i; ++j) EXPECT_LE(Abs(after.mu(i, j)), Rat(1, 2));
    }
  }
}

TEST(ShortestVector, Examples) {
  ShortestVectorResult id = ShortestVector(GramMatrix::Identity(3));
  EXPECT_EQ(id.norm_sq, 1);
  EXPECT_EQ(id.coeffs, (IntVector{1, 0, 0}));
  EXPECT_EQ(ShortestVector(A2()).norm_sq, 1);
  ShortestVectorResult ext = ShortestVector(Extremal());
  EXPECT_EQ(ext.norm_sq, 1);
  EXPECT_EQ(ext.coeffs, (IntVector{1, 0, 0}));
  ShortestVectorResult d = ShortestVector(GramMatrix({{4, 0}, {0, 1}}));
  EXPECT_EQ(d.coeffs, (IntVector{0, 1}));
  EXPECT_GT(d.nodes_visited, 0u);
}

TEST(ShortestVector, MatchesBruteForce) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; checked < 60 && seed < 5000; ++seed) {
    std::size_t const n = 1 + seed % 4;
    auto g = BoxedInstance(n, seed);
    if (!g) continue;
    ++checked;
    oracle::Shortest const want = oracle::ShortestInBox(g->entries(), oracle::UniformBox(n, 5));
    ShortestVectorResult const got = ShortestVector(*g);
    EXPECT_EQ(got.norm_sq, want.norm);
    EXPECT_EQ(QuadraticFormValue(*g, got.coeffs), got.norm_sq);
    EXPECT_EQ(got.coeffs, want.winner) << "seed " << seed;
  }
  EXPECT_EQ(checked, 60u);
}

TEST(ProjectedGram, Examples) {
  EXPECT_EQ(ProjectedGram(Extremal(), 0), Extremal());
  EXPECT_EQ(ProjectedGram(Extremal(), 1), A2());
  EXPECT_EQ(ProjectedGram(Extremal(), 2).entries(), (Matrix<Rat>{{Rat(3, 4)}}));
}

TEST(HkzReduce, Examples) {
  EXPECT_EQ(HkzReduce(GramMatrix::Identity(3)).reduced, GramMatrix::Identity(3));
  ReductionReport d = HkzReduce(GramMatrix({{4, 0}, {0, 1}}));
  EXPECT_EQ(d.reduced.entries(), (Matrix<Rat>{{1, 0}, {0, 4}}));
  EXPECT_EQ(HkzReduce(Extremal()).reduced, Extremal());
  ReductionReport minus = HkzReduce(GramMatrix({{1, Rat(1, 2), Rat(1, 2)},
                                                {Rat(1, 2), Rat(5, 4), Rat(-1, 4)},
                                                {Rat(1, 2), Rat(-1, 4), Rat(5, 4)}}));
  EXPECT_TRUE(IsHkzReduced(minus.reduced).reduced);
  EXPECT_EQ(OrthogonalityDefect(minus.reduced), Rat(25, 12));
}

TEST(IsHkzReduced, Examples) {
  EXPECT_TRUE(IsHkzReduced(GramMatrix::Identity(4)).reduced);
  HkzCertificate d = IsHkzReduced(GramMatrix({{4, 0}, {0, 1}}));
  EXPECT_FALSE(d.reduced);
  EXPECT_EQ(d.failure.rfind("b1 not shortest", 0), 0u) << d.failure;
  EXPECT_EQ(d.level, 0u);
  EXPECT_TRUE(IsHkzReduced(Extremal()).reduced);
  HkzCertificate s = IsHkzReduced(GramMatrix({{1, 3}, {3, 10}}));
  EXPECT_FALSE(s.reduced);
}

TEST(HkzReduce, RandomProperties) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::size_t const n = 1 + seed % 5;
    GramMatrix const g(oracle::RandomGram(n, seed + 1000, 10));
    ReductionReport const r = HkzReduce(g);
    EXPECT_TRUE(IsHkzReduced(r.reduced).reduced) << "seed " << seed;
    EXPECT_EQ(ApplyUnimodular(g, r.transform), r.reduced);
    EXPECT_EQ(Determinant(r.reduced), Determinant(g));
    Integer const det = IntegerDeterminant(r.transform.entries());
    EXPECT_TRUE(det == 1 || det == -1);
    // Idempotent.
    ReductionReport const again = HkzReduce(r.reduced);
    EXPECT_EQ(again.reduced, r.reduced) << "seed " << seed;
    // The first vector is a shortest vector.
    EXPECT_EQ(r.reduced(0, 0), ShortestVector(g).norm_sq);
  }
}

TEST(SuccessiveMinima, Examples) {
  EXPECT_EQ(ComputeSuccessiveMinima(GramMatrix::Identity(3)).minima_sq,
            (std::vector<Rat>{1, 1, 1}));
  EXPECT_EQ(ComputeSuccessiveMinima(A2()).minima_sq, (std::vector<Rat>{1, 1}));
  // (0, 1, -1) has norm 5/4 + 5/4 - 3/2 = 1, so λ_2² = 1.
  SuccessiveMinima const ext = ComputeSuccessiveMinima(Extremal());
  EXPECT_EQ(ext.minima_sq, (std::vector<Rat>{1, 1, Rat(5, 4)}));
  EXPECT_EQ(ext.minima_sq, oracle::Minima(Extremal().entries(), Rat(5, 4)));
  try {
    ComputeSuccessiveMinima(GramMatrix::Identity(7));
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupported);
  }
}

TEST(SuccessiveMinima, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::size_t const n = 2 + seed % 2;
    Matrix<Rat> const m = oracle::RandomGram(n, seed + 77, 4);
    GramMatrix const g(m);
    SuccessiveMinima const got = ComputeSuccessiveMinima(g);
    EXPECT_EQ(got.minima_sq, oracle::Minima(m, oracle::MaxDiag(m))) << "seed " << seed;
    EXPECT_EQ(oracle::Rank(got.witnesses), n);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(QuadraticFormValue(g, got.witnesses[i]), got.minima_sq[i]);
    }
  }
}

TEST(CheckBasisBounds, Examples) {
  BasisBoundReport id = CheckBasisBounds(GramMatrix::Identity(3));
  EXPECT_TRUE(id.all_hold);
  EXPECT_EQ(id.TightestRatio("gso_vs_minima"), 1);

  BasisBoundReport a2 = CheckBasisBounds(A2());
  EXPECT_TRUE(a2.all_hold);
  EXPECT_EQ(a2.TightestRatio("gso_adjacent"), 1);

  BasisBoundReport ext = CheckBasisBounds(Extremal());
  EXPECT_TRUE(ext.all_hold);
  bool saw_b2 = false, saw_b3 = false;
  for (BasisBoundCheck const& c : ext.checks) {
    if (c.family == "gso_vs_minima" && c.index == 2) {
      saw_b2 = true;
      EXPECT_EQ(c.lhs, 1);
      EXPECT_EQ(c.rhs, 1);
    }
    if (c.family == "norm_upper" && c.index == 3) {
      saw_b3 = true;
      EXPECT_EQ(c.lhs, Rat(5, 4));
      EXPECT_EQ(c.rhs, Rat(6, 4) * Rat(5, 4));
    }
  }
  EXPECT_TRUE(saw_b2 && saw_b3);

  try {
    CheckBasisBounds(GramMatrix({{4, 0}, {0, 1}}));
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
  }
}

TEST(CheckBasisBounds, HoldOnRandomHkzBases) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GramMatrix const g(oracle::RandomGram(2 + seed % 4, seed + 300, 10));
    BasisBoundReport const r = CheckBasisBounds(HkzReduce(g).reduced);
    EXPECT_TRUE(r.all_hold) << "seed " << seed;
  }
}

TEST(SignNormalized, FirstNonzeroPositive) {
  EXPECT_EQ(SignNormalized({0, -2, 3}), (IntVector{0, 2, -3}));
  EXPECT_EQ(SignNormalized({0, 0}), (IntVector{0, 0}));
}

}  // namespace
}  // namespace hkz
