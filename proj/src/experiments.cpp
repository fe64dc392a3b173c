#include "hkz/experiments.hpp"

#include <random>
#include <sstream>

#include "hkz/bounds.hpp"
#include "hkz/error.hpp"
#include "hkz/json_util.hpp"
#include "hkz/parallel.hpp"
#include "hkz/proof_verify.hpp"

namespace hkz {

GramMatrix RandomGram(std::size_t rank, std::uint64_t seed,
                      std::int64_t entry_bound) {
  if (rank < 1) Fail(ErrorKind::kInvalidInput, "rank must be >= 1");
  if (entry_bound < 1) Fail(ErrorKind::kInvalidInput, "entry bound must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> entry(-entry_bound, entry_bound);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix<Integer> a(rank, rank);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = 0; j < rank; ++j) {
        a(i, j) = Integer(static_cast<long>(entry(rng)));
      }
    }
    if (IntegerDeterminant(a) == 0) continue;
    Matrix<Rat> g(rank, rank);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = 0; j < rank; ++j) {
        Integer s = 0;
        for (std::size_t t = 0; t < rank; ++t) s += a(i, t) * a(j, t);
        g(i, j) = Rat(s);
      }
    }
    return GramMatrix(std::move(g));
  }
  Fail(ErrorKind::kInvalidInput, "no nonsingular matrix in 1000 draws");
}

ChainReport ChainCheckHkz(GramMatrix const& g) {
  std::size_t const n = g.rank();
  if (n < 4 || n > kMaxMinimaRank) {
    Fail(ErrorKind::kUnsupported, "chain check needs rank 4.." +
                                      std::to_string(kMaxMinimaRank));
  }
  HkzCertificate const cert = IsHkzReduced(g);
  if (!cert.reduced) {
    Fail(ErrorKind::kInvalidInput, "input not HKZ reduced: " + cert.failure);
  }
  GSOData const gso = Ldl(g);
  ChainReport report;
  auto add = [&](std::string name, std::size_t index, Rat lhs, Rat rhs) {
    bool const holds = lhs <= rhs;
    report.checks.push_back({std::move(name), index, std::move(lhs),
                             std::move(rhs), holds});
  };

  Matrix<Rat> lead(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) lead(i, j) = g(i, j);
  }
  GramMatrix const block(std::move(lead));
  report.leading_block_hkz = IsHkzReduced(block).reduced;
  report.leading_block_defect = OrthogonalityDefect(block);
  add("leading_block_defect", 3, report.leading_block_defect, Rat(25, 12));

  Rat const& b4 = gso.bstar[3];
  add("bstar1_vs_bstar4", 1, gso.bstar[0], 2 * b4);
  add("bstar2_vs_bstar4", 2, gso.bstar[1], Rat(3, 2) * b4);
  add("bstar3_vs_bstar4", 3, gso.bstar[2], Rat(4, 3) * b4);

  GramMatrix const projected = ProjectedGram(gso, 3);
  SuccessiveMinima const tail = ComputeSuccessiveMinima(projected);
  report.projected_minima_sq = tail.minima_sq;
  for (std::size_t i = 3; i < n; ++i) {
    add("norm_vs_projected_norm", i + 1, g(i, i),
        projected(i - 3, i - 3) + Rat(29, 24) * b4);
    Rat const factor = Frac(static_cast<long>(i + 1), 4) + Rat(29, 24);
    add("norm_vs_projected_minimum", i + 1, g(i, i),
        factor * tail.minima_sq[i - 3]);
  }

  SuccessiveMinima const full = ComputeSuccessiveMinima(g);
  for (std::size_t i = 0; i < n; ++i) {
    add("bstar_vs_minimum", i + 1, gso.bstar[i], full.minima_sq[i]);
  }

  report.all_hold = report.leading_block_hkz;
  for (ChainCheck const& c : report.checks) {
    report.all_hold = report.all_hold && c.holds;
  }
  return report;
}

void ExperimentConfig::Validate() const {
  if (rank < 2 || rank > kMaxMinimaRank) {
    Fail(rank > kMaxMinimaRank ? ErrorKind::kUnsupported
                               : ErrorKind::kInvalidInput,
         "rank must be in 2.." + std::to_string(kMaxMinimaRank));
  }
  if (trials < 1) Fail(ErrorKind::kInvalidInput, "trials must be >= 1");
  if (entry_bound < 1) {
    Fail(ErrorKind::kInvalidInput, "entry bound must be >= 1");
  }
}

namespace {

TrialRecord RunTrial(ExperimentConfig const& config, std::size_t index) {
  GramMatrix const input =
      index == 0 && config.rank == 3
          ? ExtremalGram(+1)
          : RandomGram(config.rank, config.seed + index, config.entry_bound);
  ReductionReport const reduction = HkzReduce(input);

  TrialRecord r;
  r.trial_index = index;
  r.rank = config.rank;
  r.reduced = reduction.reduced;
  r.nodes = reduction.total_nodes;
  r.defect = OrthogonalityDefect(r.reduced);
  r.gamma_pow = HermiteConstantPower(config.rank);
  r.lls_bound = LlsBound(config.rank);
  r.within_lls = r.defect <= r.lls_bound;
  if (config.rank >= 4) {
    r.new_bound = NewBound(config.rank);
    r.within_new = r.defect <= *r.new_bound;
    r.chain_checks_passed = ChainCheckHkz(r.reduced).all_hold;
  } else {
    r.delta_exact = DeltaExact(config.rank);
    r.within_exact = r.defect <= *r.delta_exact;
  }
  return r;
}

}  // namespace

ExperimentResult RunExperiment(ExperimentConfig const& config) {
  config.Validate();
  std::vector<std::optional<TrialRecord>> slots(config.trials);
  ParallelFor(config.trials, config.workers,
              [&](std::size_t i) { slots[i] = RunTrial(config, i); });

  ExperimentResult result;
  ExperimentSummary& s = result.summary;
  s.trials = config.trials;
  s.gamma_pow = HermiteConstantPower(config.rank);
  for (auto& slot : slots) {
    TrialRecord& r = *slot;
    if (!r.bounds_ok()) ++s.failures;
    if (result.records.empty() || r.defect > s.max_defect) {
      s.max_defect = r.defect;
      s.max_defect_trial = r.trial_index;
      s.max_defect_gram = r.reduced;
    }
    result.records.push_back(std::move(r));
  }
  if (config.rank >= 4) {
    s.new_bound = NewBound(config.rank);
  } else {
    s.delta_exact = DeltaExact(config.rank);
  }
  s.max_defect_within_conjecture = s.max_defect <= s.gamma_pow;
  s.passed = s.failures == 0;
  return result;
}

std::string ExperimentCsv(std::vector<TrialRecord> const& records) {
  std::ostringstream out;
  out << "trial,rank,defect_exact,defect_float,gamma_pow,lls_bound,new_bound,"
         "chain_ok,nodes\n";
  for (TrialRecord const& r : records) {
    out << r.trial_index << ',' << r.rank << ',' << ToString(r.defect) << ','
        << ToDecimal(r.defect) << ',' << ToString(r.gamma_pow) << ','
        << ToString(r.lls_bound) << ','
        << (r.new_bound ? ToString(*r.new_bound) : std::string()) << ',';
    if (r.chain_checks_passed) out << (*r.chain_checks_passed ? "true" : "false");
    out << ',' << r.nodes << '\n';
  }
  return out.str();
}

nlohmann::json ExperimentSummaryJson(ExperimentSummary const& s) {
  nlohmann::json out = {
      {"ensemble", "G = A·Aᵀ, A square with uniform integer entries"},
      {"trials", s.trials},
      {"failures", s.failures},
      {"max_defect", RationalJson(s.max_defect)},
      {"max_defect_trial", s.max_defect_trial},
      {"max_defect_gram", MatrixJson(s.max_defect_gram.entries())},
      {"gamma_pow", RationalJson(s.gamma_pow)},
      {"max_defect_within_conjecture", s.max_defect_within_conjecture},
      {"new_bound", nullptr},
      {"delta_exact", nullptr},
      {"passed", s.passed},
  };
  if (s.new_bound) out["new_bound"] = RationalJson(*s.new_bound);
  if (s.delta_exact) out["delta_exact"] = RationalJson(*s.delta_exact);
  return out;
}

}  // namespace hkz
