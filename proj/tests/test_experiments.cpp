#include <gtest/gtest.h>

#include "hkz/bounds.hpp"
#include "hkz/error.hpp"
#include "hkz/experiments.hpp"
#include "hkz/proof_verify.hpp"
#include "oracles.hpp"

namespace hkz {
namespace {

TEST(RandomGram, RankOneIsASquare) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GramMatrix const g = RandomGram(1, seed, 10);
    Integer const root = sqrt(g(0, 0).get_num());
    EXPECT_EQ(g(0, 0).get_den(), 1);
    EXPECT_EQ(root * root, g(0, 0).get_num());
    EXPECT_GE(root, 1);
    EXPECT_LE(root, 10);
  }
}

TEST(RandomGram, DeterministicAndPositiveDefinite) {
  EXPECT_EQ(RandomGram(3, 42, 10), RandomGram(3, 42, 10));
  EXPECT_NE(RandomGram(3, 42, 10), RandomGram(3, 43, 10));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GramMatrix const g = RandomGram(2 + seed % 5, seed, 1);
    for (Rat const& b : Ldl(g).bstar) EXPECT_GT(b, 0);
  }
  EXPECT_THROW(RandomGram(0, 1, 10), Error);
  EXPECT_THROW(RandomGram(2, 1, 0), Error);
}

TEST(ChainCheck, IdentityRankFour) {
  ChainReport const r = ChainCheckHkz(GramMatrix::Identity(4));
  EXPECT_TRUE(r.all_hold);
  EXPECT_TRUE(r.leading_block_hkz);
  EXPECT_EQ(r.leading_block_defect, 1);
  EXPECT_EQ(r.projected_minima_sq, (std::vector<Rat>{1}));
  for (ChainCheck const& c : r.checks) EXPECT_TRUE(c.holds) << c.name;
}

TEST(ChainCheck, RejectsUnreducedAndOutOfRange) {
  GramMatrix const g({{4, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  try {
    ChainCheckHkz(g);
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidInput);
  }
  EXPECT_THROW(ChainCheckHkz(GramMatrix::Identity(3)), Error);
}

TEST(ChainCheck, RandomRankFourAndFive) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    std::size_t const n = 4 + seed % 2;
    GramMatrix const g = HkzReduce(RandomGram(n, seed, 10)).reduced;
    ChainReport const r = ChainCheckHkz(g);
    EXPECT_TRUE(r.all_hold) << "seed " << seed;
    EXPECT_EQ(r.projected_minima_sq.size(), n - 3);
    // Projected minima against brute force.
    Matrix<Rat> const p = ProjectedGram(g, 3).entries();
    EXPECT_EQ(r.projected_minima_sq, oracle::Minima(p, oracle::MaxDiag(p)));
    if (n == 4) EXPECT_LE(OrthogonalityDefect(g), Rat(1325, 288));
  }
}

TEST(Experiment, ConfigValidation) {
  ExperimentConfig c;
  c.rank = 1;
  EXPECT_THROW(c.Validate(), Error);
  c.rank = 7;
  try {
    c.Validate();
    FAIL();
  } catch (Error const& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupported);
  }
  c.rank = 3;
  c.trials = 0;
  EXPECT_THROW(c.Validate(), Error);
}

TEST(Experiment, RankThreeIncludesExtremalForm) {
  ExperimentConfig c;
  c.rank = 3;
  c.trials = 50;
  c.seed = 5;
  ExperimentResult const r = RunExperiment(c);
  EXPECT_TRUE(r.summary.passed);
  EXPECT_EQ(r.records[0].defect, Rat(25, 12));
  EXPECT_EQ(r.summary.max_defect, Rat(25, 12));
  EXPECT_EQ(r.summary.max_defect_trial, 0u);
  EXPECT_EQ(r.summary.max_defect_gram, HkzReduce(ExtremalGram(+1)).reduced);
  // Reported, never asserted: 25/12 > γ_3³ = 2.
  EXPECT_FALSE(r.summary.max_defect_within_conjecture);
}

TEST(Experiment, ReproducibleAcrossWorkerCounts) {
  ExperimentConfig c;
  c.rank = 4;
  c.trials = 24;
  c.seed = 99;
  c.workers = 1;
  std::string const serial = ExperimentCsv(RunExperiment(c).records);
  c.workers = 4;
  ExperimentResult const parallel = RunExperiment(c);
  EXPECT_EQ(ExperimentCsv(parallel.records), serial);
  EXPECT_TRUE(parallel.summary.passed);
  for (TrialRecord const& t : parallel.records) {
    EXPECT_TRUE(*t.chain_checks_passed);
    EXPECT_EQ(*t.new_bound, Rat(1325, 288));
    EXPECT_LE(t.defect, *t.new_bound);
  }
}

TEST(Experiment, CsvAndSummaryFormat) {
  ExperimentConfig c;
  c.rank = 2;
  c.trials = 3;
  ExperimentResult const r = RunExperiment(c);
  std::string const csv = ExperimentCsv(r.records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "trial,rank,defect_exact,defect_float,gamma_pow,lls_bound,new_bound,chain_ok,nodes");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  nlohmann::json const j = ExperimentSummaryJson(r.summary);
  EXPECT_EQ(j["trials"], 3);
  EXPECT_EQ(j["delta_exact"]["exact"], "4/3");
  EXPECT_TRUE(j["new_bound"].is_null());
  EXPECT_EQ(j["max_defect_gram"].size(), 2u);
}

}  // namespace
}  // namespace hkz
