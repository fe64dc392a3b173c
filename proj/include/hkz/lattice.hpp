#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hkz/matrix.hpp"
#include "hkz/rational.hpp"

namespace hkz {

using IntVector = std::vector<Integer>;

// A lattice up to isometry: the Gram matrix ⟨b_i, b_j⟩ of one of its bases.
// Construction validates symmetry and positive definiteness, so every
// `GramMatrix` in circulation is a valid lattice.
class GramMatrix {
 public:
  explicit GramMatrix(Matrix<Rat> entries);

  static GramMatrix Identity(std::size_t n);

  std::size_t rank() const { return entries_.rows(); }
  Rat const& operator()(std::size_t i, std::size_t j) const {
    return entries_(i, j);
  }
  Matrix<Rat> const& entries() const { return entries_; }

  friend bool operator==(GramMatrix const&, GramMatrix const&) = default;

 private:
  Matrix<Rat> entries_;
};

// n row vectors in Q^m.
struct VectorBasis {
  Matrix<Rat> rows;
};

// Gram–Schmidt data from the LDLᵀ factorization G = L·diag(bstar)·Lᵀ:
// mu(i, j) = μ_{i,j} for j < i (unit diagonal, zero above), bstar[i] =
// ‖b_i(i)‖².
struct GSOData {
  Matrix<Rat> mu;
  std::vector<Rat> bstar;

  std::size_t rank() const { return bstar.size(); }
  Matrix<Rat> Reconstruct() const;
};

// Integer change of basis with determinant ±1. Row i holds the coordinates of
// the new i-th basis vector in the old basis.
class Unimodular {
 public:
  explicit Unimodular(Matrix<Integer> entries);

  static Unimodular Identity(std::size_t n);

  std::size_t rank() const { return entries_.rows(); }
  Integer const& operator()(std::size_t i, std::size_t j) const {
    return entries_(i, j);
  }
  Matrix<Integer> const& entries() const { return entries_; }

  // this · other (apply `other` first).
  Unimodular Then(Unimodular const& other) const;

  friend bool operator==(Unimodular const&, Unimodular const&) = default;

 private:
  Matrix<Integer> entries_;
};

GramMatrix GramFromVectors(VectorBasis const& basis);

// Throws kInvalidInput naming the first nonpositive pivot.
GSOData Ldl(Matrix<Rat> const& g);
GSOData Ldl(GramMatrix const& g);

Rat QuadraticFormValue(GramMatrix const& g, std::span<Integer const> x);

// U·G·Uᵀ.
GramMatrix ApplyUnimodular(GramMatrix const& g, Unimodular const& u);

Rat Determinant(GramMatrix const& g);

// Exact determinant of an integer matrix (fraction-free elimination).
Integer IntegerDeterminant(Matrix<Integer> const& m);

}  // namespace hkz
