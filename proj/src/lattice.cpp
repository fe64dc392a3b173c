#include "hkz/lattice.hpp"

#include <string>
#include <utility>

#include "hkz/error.hpp"

namespace hkz {

GramMatrix::GramMatrix(Matrix<Rat> entries) : entries_(std::move(entries)) {
  std::size_t const n = entries_.rows();
  if (n == 0 || entries_.cols() != n) {
    Fail(ErrorKind::kInvalidInput, "Gram matrix must be square and nonempty");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (entries_(i, j) != entries_(j, i)) {
        Fail(ErrorKind::kInvalidInput,
             "Gram matrix not symmetric at (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ")");
      }
    }
  }
  Ldl(entries_);
}

GramMatrix GramMatrix::Identity(std::size_t n) {
  return GramMatrix(Matrix<Rat>::Identity(n));
}

Matrix<Rat> GSOData::Reconstruct() const {
  std::size_t const n = rank();
  Matrix<Rat> g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rat sum = 0;
      for (std::size_t k = 0; k <= j; ++k) sum += mu(i, k) * mu(j, k) * bstar[k];
      g(i, j) = sum;
      g(j, i) = sum;
    }
  }
  return g;
}

Unimodular::Unimodular(Matrix<Integer> entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    Fail(ErrorKind::kInvalidInput, "transform must be square");
  }
  Integer const det = IntegerDeterminant(entries_);
  if (det != 1 && det != -1) {
    Fail(ErrorKind::kInvalidInput,
         "transform not unimodular (determinant " + ToString(det) + ")");
  }
}

Unimodular Unimodular::Identity(std::size_t n) {
  return Unimodular(Matrix<Integer>::Identity(n));
}

Unimodular Unimodular::Then(Unimodular const& other) const {
  return Unimodular(Multiply(entries_, other.entries_));
}

GramMatrix GramFromVectors(VectorBasis const& basis) {
  std::size_t const n = basis.rows.rows();
  std::size_t const m = basis.rows.cols();
  Matrix<Rat> g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rat dot = 0;
      for (std::size_t t = 0; t < m; ++t) {
        dot += basis.rows(i, t) * basis.rows(j, t);
      }
      g(i, j) = dot;
      g(j, i) = dot;
    }
  }
  try {
    return GramMatrix(std::move(g));
  } catch (Error const&) {
    // The Gram matrix of real vectors is PSD; a zero pivot means dependence.
    Fail(ErrorKind::kInvalidInput, "singular basis");
  }
}

GSOData Ldl(Matrix<Rat> const& g) {
  std::size_t const n = g.rows();
  GSOData gso{Matrix<Rat>::Identity(n), std::vector<Rat>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rat r = g(i, j);
      for (std::size_t k = 0; k < j; ++k) {
        r -= gso.mu(i, k) * gso.mu(j, k) * gso.bstar[k];
      }
      gso.mu(i, j) = r / gso.bstar[j];
    }
    Rat d = g(i, i);
    for (std::size_t k = 0; k < i; ++k) {
      d -= gso.mu(i, k) * gso.mu(i, k) * gso.bstar[k];
    }
    if (d <= 0) {
      Fail(ErrorKind::kInvalidInput, "not positive definite: pivot " +
                                         std::to_string(i + 1) + " is " +
                                         ToString(d));
    }
    gso.bstar[i] = d;
  }
  return gso;
}

GSOData Ldl(GramMatrix const& g) { return Ldl(g.entries()); }

Rat QuadraticFormValue(GramMatrix const& g, std::span<Integer const> x) {
  std::size_t const n = g.rank();
  if (x.size() != n) {
    Fail(ErrorKind::kInvalidInput,
         "coefficient vector has length " + std::to_string(x.size()) +
             ", expected " + std::to_string(n));
  }
  Rat value = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] != 0) row += g(i, j) * Rat(x[j]);
    }
    value += Rat(x[i]) * row;
  }
  return value;
}

GramMatrix ApplyUnimodular(GramMatrix const& g, Unimodular const& u) {
  if (u.rank() != g.rank()) {
    Fail(ErrorKind::kInvalidInput, "transform rank does not match Gram rank");
  }
  Matrix<Rat> const ug = Multiply(u.entries(), g.entries());
  Matrix<Rat> ugut(g.rank(), g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Rat sum = 0;
      for (std::size_t k = 0; k < g.rank(); ++k) {
        if (u(j, k) != 0) sum += ug(i, k) * Rat(u(j, k));
      }
      ugut(i, j) = sum;
      ugut(j, i) = sum;
    }
  }
  return GramMatrix(std::move(ugut));
}

Rat Determinant(GramMatrix const& g) {
  Rat det = 1;
  for (Rat const& b : Ldl(g).bstar) det *= b;
  return det;
}

Integer IntegerDeterminant(Matrix<Integer> const& m) {
  // Bareiss fraction-free elimination with row pivoting.
  std::size_t const n = m.rows();
  if (n == 0) return 1;
  Matrix<Integer> a = m;
  Integer previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.SwapRows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), previous.get_mpz_t());
        a(i, j) = t;
      }
    }
    previous = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace hkz
