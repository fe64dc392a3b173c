#pragma once

#include <cstdint>

#include "hkz/lattice.hpp"

namespace hkz::internal {

// Depth-first enumeration of the nonzero integer vectors x with
// xᵀGx ≤ bound, given G's GSO data. One representative of each ±x pair is
// visited (the one whose last nonzero coordinate is positive). The visitor
// may lower `bound`; pruning uses the current value.
class Enumerator {
 public:
  explicit Enumerator(GSOData const& gso)
      : gso_(gso), x_(gso.rank(), Integer(0)) {}

  template <typename Visit>
  void Run(Rat& bound, Visit&& visit) {
    if (x_.empty()) return;
    Descend(x_.size() - 1, Rat(0), /*tail_zero=*/true, bound, visit);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  template <typename Visit>
  void Descend(std::size_t level, Rat const& partial, bool tail_zero,
               Rat& bound, Visit& visit) {
    Rat center = 0;
    for (std::size_t j = level + 1; j < x_.size(); ++j) {
      if (x_[j] != 0) center -= gso_.mu(j, level) * Rat(x_[j]);
    }
    Integer const start = tail_zero ? Integer(0) : Round(center);
    Rat const& b = gso_.bstar[level];

    auto try_value = [&](Integer const& value) -> bool {
      Rat const offset = Rat(value) - center;
      Rat const total = partial + b * offset * offset;
      if (total > bound) return false;
      bool const still_zero = tail_zero && value == 0;
      if (level == 0 && still_zero) return true;  // the zero vector
      ++nodes_;
      x_[level] = value;
      if (level == 0) {
        visit(static_cast<IntVector const&>(x_), total);
      } else {
        Descend(level - 1, total, still_zero, bound, visit);
      }
      return true;
    };

    // (value - center)² is monotone on each side of `start`.
    for (Integer value = start; try_value(value); ++value) {
    }
    if (!tail_zero) {
      for (Integer value = start - 1; try_value(value); --value) {
      }
    }
    x_[level] = 0;
  }

  GSOData const& gso_;
  IntVector x_;
  std::uint64_t nodes_ = 0;
};

}  // namespace hkz::internal
