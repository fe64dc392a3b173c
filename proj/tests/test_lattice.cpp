#include <gtest/gtest.h>

#include "hkz/error.hpp"
#include "hkz/gram_io.hpp"
#include "hkz/lattice.hpp"
#include "oracles.hpp"

namespace hkz {
namespace {

GramMatrix Extremal() {
  return GramMatrix({{1, Rat(1, 2), Rat(1, 2)},
                     {Rat(1, 2), Rat(5, 4), Rat(3, 4)},
                     {Rat(1, 2), Rat(3, 4), Rat(5, 4)}});
}

GramMatrix A2() { return GramMatrix({{1, Rat(1, 2)}, {Rat(1, 2), 1}}); }

ErrorKind KindOf(auto&& f) {
  try {
    f();
  } catch (Error const& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kVerification;
}

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(ParseRational("3/4"), Rat(3, 4));
  EXPECT_EQ(ParseRational("-6/8"), Rat(-3, 4));
  EXPECT_EQ(ParseRational("+5"), Rat(5));
  EXPECT_EQ(ParseRational("0"), Rat(0));
  EXPECT_EQ(ToString(ParseRational("10/4")), "5/2");
}

TEST(Rational, RejectsMalformed) {
  for (char const* bad : {"", "1/0", "a", "1/", "/2", "1.5", "1/-2", "--1", "1 /2"}) {
    EXPECT_EQ(KindOf([&] { ParseRational(bad); }), ErrorKind::kParse) << bad;
  }
}

TEST(Rational, Rendering) {
  EXPECT_EQ(ToString(Rat(25, 12)), "25/12");
  EXPECT_EQ(ToString(Rat(4)), "4");
  EXPECT_EQ(ToDecimal(Rat(1325, 288)), "4.60069444444");
  EXPECT_EQ(ToDecimal(Rat(4, 3)), "1.33333333333");
  EXPECT_EQ(Frac(4, 4), Rat(1));
  EXPECT_EQ(ToString(Frac(210, 4)), "105/2");
  EXPECT_EQ(Floor(Rat(-1, 2)), -1);
  EXPECT_EQ(Round(Rat(1, 2)), 1);
  EXPECT_EQ(Round(Rat(-1, 2)), 0);
  EXPECT_EQ(Round(Rat(-3, 4)), -1);
}

TEST(GramFromVectors, Examples) {
  EXPECT_EQ(GramFromVectors({Matrix<Rat>::Identity(3)}), GramMatrix::Identity(3));
  EXPECT_EQ(GramFromVectors({Matrix<Rat>{{1, 0}, {Rat(1, 2), 1}}}).entries(),
            (Matrix<Rat>{{1, Rat(1, 2)}, {Rat(1, 2), Rat(5, 4)}}));
  EXPECT_EQ(GramFromVectors({Matrix<Rat>{{2, 0}, {0, 1}}}).entries(),
            (Matrix<Rat>{{4, 0}, {0, 1}}));
  try {
    GramFromVectors({Matrix<Rat>{{1, 2}, {2, 4}}});
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
    EXPECT_NE(std::string(e.what()).find("singular basis"), std::string::npos);
  }
}

TEST(GramMatrix, ValidatesInput) {
  EXPECT_EQ(KindOf([] { GramMatrix({{1, 2}, {3, 4}}); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(KindOf([] { GramMatrix({{1, 2}, {2, 1}}); }), ErrorKind::kInvalidInput);
  EXPECT_EQ(KindOf([] { GramMatrix(Matrix<Rat>(2, 3)); }), ErrorKind::kInvalidInput);
  try {
    GramMatrix({{1, 2}, {2, 1}});
  } catch (Error const& e) {
    EXPECT_NE(std::string(e.what()).find("not positive definite"), std::string::npos);
  }
}

TEST(Ldl, Examples) {
  GSOData id = Ldl(GramMatrix::Identity(3));
  EXPECT_EQ(id.mu, Matrix<Rat>::Identity(3));
  EXPECT_EQ(id.bstar, (std::vector<Rat>{1, 1, 1}));

  GSOData a2 = Ldl(A2());
  EXPECT_EQ(a2.mu(1, 0), Rat(1, 2));
  EXPECT_EQ(a2.bstar, (std::vector<Rat>{1, Rat(3, 4)}));

  GSOData ext = Ldl(Extremal());
  EXPECT_EQ(ext.mu(1, 0), Rat(1, 2));
  EXPECT_EQ(ext.mu(2, 0), Rat(1, 2));
  EXPECT_EQ(ext.mu(2, 1), Rat(1, 2));
  EXPECT_EQ(ext.bstar, (std::vector<Rat>{1, 1, Rat(3, 4)}));
}

TEST(QuadraticFormValue, Examples) {
  GramMatrix const g = Extremal();
  EXPECT_EQ(QuadraticFormValue(g, IntVector{1, 0, 0}), 1);
  EXPECT_EQ(QuadraticFormValue(g, IntVector{0, 0, 1}), Rat(5, 4));
  EXPECT_EQ(QuadraticFormValue(g, IntVector{-1, 1, 0}), Rat(5, 4));
  EXPECT_EQ(KindOf([&] { QuadraticFormValue(g, IntVector{1, 0}); }),
            ErrorKind::kInvalidInput);
}

TEST(ApplyUnimodular, Examples) {
  GramMatrix const g({{1, 3}, {3, 10}});
  EXPECT_EQ(ApplyUnimodular(g, Unimodular::Identity(2)), g);
  Unimodular const op(Matrix<Integer>{{1, 0}, {-3, 1}});
  EXPECT_EQ(ApplyUnimodular(g, op), GramMatrix::Identity(2));
  Unimodular const swap(Matrix<Integer>{{0, 1}, {1, 0}});
  EXPECT_EQ(ApplyUnimodular(g, swap).entries(), (Matrix<Rat>{{10, 3}, {3, 1}}));
  EXPECT_EQ(KindOf([] { Unimodular(Matrix<Integer>{{2, 0}, {0, 1}}); }),
            ErrorKind::kInvalidInput);
}

TEST(Determinant, Examples) {
  EXPECT_EQ(Determinant(GramMatrix::Identity(3)), 1);
  EXPECT_EQ(Determinant(Extremal()), Rat(3, 4));
  EXPECT_EQ(Determinant(A2()), Rat(3, 4));
  EXPECT_EQ(IntegerDeterminant(Matrix<Integer>{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}), -1);
  EXPECT_EQ(IntegerDeterminant(Matrix<Integer>{{2, 3}, {4, 6}}), 0);
}

TEST(LatticeProperties, RandomGrams) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::size_t const n = 1 + seed % 5;
    GramMatrix const g(oracle::RandomGram(n, seed, 6));
    GSOData const gso = Ldl(g);
    EXPECT_EQ(gso.Reconstruct(), g.entries());
    Rat product = 1;
    for (Rat const& b : gso.bstar) product *= b;
    EXPECT_EQ(Determinant(g), product);
    EXPECT_EQ(Determinant(g), oracle::Det(g.entries()));

    // Random unimodular: product of elementary operations.
    Matrix<Integer> u = Matrix<Integer>::Identity(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int step = 0; step < 6 && n > 1; ++step) {
      int const a = pick(rng), b = pick(rng);
      if (a == b) continue;
      int const c = coef(rng);
      for (std::size_t j = 0; j < n; ++j) u(a, j) += c * u(b, j);
    }
    GramMatrix const h = ApplyUnimodular(g, Unimodular(u));
    EXPECT_EQ(Determinant(h), Determinant(g));

    if (n <= 3) {
      oracle::ForEachInBox(oracle::UniformBox(n, 3), [&](IntVector const& x) {
        bool zero = std::all_of(x.begin(), x.end(), [](Integer const& v) { return v == 0; });
        if (!zero) EXPECT_GT(QuadraticFormValue(g, x), 0);
      });
    }
  }
}

TEST(GramIo, ParsesAndRoundTrips) {
  GramMatrix const g = ParseGram("3\n1 1/2 1/2\n1/2 5/4 3/4\n1/2  3/4\t5/4\n\n\n");
  EXPECT_EQ(g, Extremal());
  EXPECT_EQ(ParseGram(FormatGram(g)), g);
}

TEST(GramIo, ParseErrorsCarryLocation) {
  auto message = [](std::string const& text) {
    try {
      ParseGram(text);
    } catch (Error const& e) {
      return std::make_pair(e.kind(), std::string(e.what()));
    }
    return std::make_pair(ErrorKind::kVerification, std::string());
  };
  EXPECT_EQ(message("").first, ErrorKind::kParse);
  auto [kind, text] = message("2\n1 0\n0 x\n");
  EXPECT_EQ(kind, ErrorKind::kParse);
  EXPECT_NE(text.find("line 3, column 3"), std::string::npos) << text;
  EXPECT_EQ(message("2\n1 0\n").first, ErrorKind::kParse);
  EXPECT_EQ(message("2\n1 0 0\n0 1\n").first, ErrorKind::kParse);
  EXPECT_EQ(message("2\n1 0\n0 1\n5\n").first, ErrorKind::kParse);
  EXPECT_EQ(message("0\n").first, ErrorKind::kParse);
  EXPECT_EQ(message("2\n1 1\n0 1\n").first, ErrorKind::kInvalidInput);
  auto [pd_kind, pd_text] = message("2\n1 2\n2 1\n");
  EXPECT_EQ(pd_kind, ErrorKind::kInvalidInput);
  EXPECT_NE(pd_text.find("pivot"), std::string::npos);
}

}  // namespace
}  // namespace hkz
