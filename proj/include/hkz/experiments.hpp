#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hkz/lattice.hpp"
#include "hkz/reduction.hpp"

namespace hkz {

// G = A·Aᵀ for a seeded integer matrix A with entries uniform in
// [−entry_bound, entry_bound], redrawn until nonsingular (at most 1000 draws).
GramMatrix RandomGram(std::size_t rank, std::uint64_t seed,
                      std::int64_t entry_bound);

struct ChainCheck {
  std::string name;
  std::size_t index = 0;  // 1-based basis index the inequality is about
  Rat lhs;
  Rat rhs;
  bool holds = false;
};

struct ChainReport {
  bool leading_block_hkz = false;
  Rat leading_block_defect;
  std::vector<ChainCheck> checks;
  // λ_{i−3}² of the projected lattice b_4(4), …, b_n(4).
  std::vector<Rat> projected_minima_sq;
  bool all_hold = false;
};

// Inequalities used in the rank ≥ 4 defect bound, on a certified HKZ basis
// of rank 4..6.
ChainReport ChainCheckHkz(GramMatrix const& g);

struct ExperimentConfig {
  std::size_t rank = 3;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::int64_t entry_bound = 10;
  unsigned workers = 1;

  void Validate() const;
};

struct TrialRecord {
  std::size_t trial_index = 0;
  std::size_t rank = 0;
  GramMatrix reduced = GramMatrix::Identity(1);
  Rat defect;
  Rat gamma_pow;
  Rat lls_bound;
  std::optional<Rat> new_bound;
  std::optional<Rat> delta_exact;
  bool within_lls = false;
  bool within_new = true;
  bool within_exact = true;
  std::optional<bool> chain_checks_passed;  // rank ≥ 4
  std::uint64_t nodes = 0;

  bool bounds_ok() const {
    return within_lls && within_new && within_exact &&
           chain_checks_passed.value_or(true);
  }
};

struct ExperimentSummary {
  std::size_t trials = 0;
  std::size_t failures = 0;
  Rat max_defect;
  std::size_t max_defect_trial = 0;
  GramMatrix max_defect_gram = GramMatrix::Identity(1);
  Rat gamma_pow;
  bool max_defect_within_conjecture = false;  // reported, not asserted
  std::optional<Rat> new_bound;
  std::optional<Rat> delta_exact;
  bool passed = false;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;
  ExperimentSummary summary;
};

// Trial i uses seed + i. At rank 3 trial 0 is the extremal form instead.
ExperimentResult RunExperiment(ExperimentConfig const& config);

// Columns: trial, rank, defect_exact, defect_float, gamma_pow, lls_bound,
// new_bound, chain_ok, nodes.
std::string ExperimentCsv(std::vector<TrialRecord> const& records);
nlohmann::json ExperimentSummaryJson(ExperimentSummary const& summary);

}  // namespace hkz
