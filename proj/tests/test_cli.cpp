#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hkz/cli.hpp"
#include "hkz/rational.hpp"

namespace hkz {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> const& args) {
  std::ostringstream out, err;
  int const code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hkz_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(std::string const& name, std::string const& text) {
    fs::path const p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(CliTest, ReduceExtremal) {
  std::string const f = Write("ext.txt", "3\n1 1/2 1/2\n1/2 5/4 3/4\n1/2 3/4 5/4\n");
  CliRun const r = Cli({"reduce", f});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("already HKZ reduced"), std::string::npos);
  EXPECT_NE(r.out.find("25/12"), std::string::npos);
}

TEST_F(CliTest, ReduceDiagonalJson) {
  std::string const f = Write("d.txt", "2\n4 0\n0 1\n");
  CliRun const r = Cli({"reduce", f, "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto const j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["reduced"].dump(), R"([["1","0"],["0","4"]])");
  EXPECT_FALSE(j["input_hkz_reduced"].get<bool>());
}

TEST_F(CliTest, ErrorExitCodes) {
  EXPECT_EQ(Cli({"reduce", Write("empty.txt", "")}).code, kExitParse);
  CliRun const bad = Cli({"reduce", Write("bad.txt", "2\n1 0\n0 q\n")});
  EXPECT_EQ(bad.code, kExitParse);
  EXPECT_NE(bad.err.find("line 3, column 3"), std::string::npos);
  EXPECT_EQ(Cli({"reduce", Write("npd.txt", "2\n1 2\n2 1\n")}).code, kExitInvalidInput);
  EXPECT_EQ(Cli({"reduce", Write("asym.txt", "2\n1 0\n1 1\n")}).code, kExitInvalidInput);
  EXPECT_EQ(Cli({"bounds", "--max-rank", "9"}).code, kExitUnsupported);
  EXPECT_EQ(Cli({"bounds", "--max-rank", "3", "--bogus"}).code, kExitParse);
  EXPECT_EQ(Cli({}).code, kExitParse);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitParse);
  EXPECT_EQ(Cli({"minima", Write("big.txt", "7\n1 0 0 0 0 0 0\n0 1 0 0 0 0 0\n0 0 1 0 0 0 0\n0 0 0 1 0 0 0\n0 0 0 0 1 0 0\n0 0 0 0 0 1 0\n0 0 0 0 0 0 1\n")}).code,
            kExitUnsupported);
  EXPECT_EQ(Cli({"experiment", "--rank", "7"}).code, kExitUnsupported);
  EXPECT_EQ(Cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, Bounds) {
  CliRun const three = Cli({"bounds", "--max-rank", "3", "--format", "csv"});
  EXPECT_EQ(three.code, kExitOk);
  EXPECT_NE(three.out.find("3,2,15/4,,25/12\n"), std::string::npos);
  CliRun const four = Cli({"bounds", "--max-rank", "4"});
  EXPECT_NE(four.out.find("1325/288 (4.60069444444)"), std::string::npos);
  auto const j = nlohmann::json::parse(Cli({"bounds", "--max-rank", "4", "--format", "json"}).out);
  EXPECT_EQ(ParseRational(j[3]["new_bound"]["exact"].get<std::string>()), Rat(1325, 288));
}

TEST_F(CliTest, DefectAndMinima) {
  std::string const a2 = Write("a2.txt", "2\n1 1/2\n1/2 1\n");
  CliRun const d = Cli({"defect", a2, "--format", "json"});
  ASSERT_EQ(d.code, kExitOk);
  auto const j = nlohmann::json::parse(d.out);
  EXPECT_EQ(j["defect"]["exact"], "4/3");
  EXPECT_TRUE(j["hkz_reduced"].get<bool>());
  CliRun const m = Cli({"minima", a2, "--format", "json"});
  auto const mj = nlohmann::json::parse(m.out);
  EXPECT_EQ(mj["minima"][1]["norm_sq"]["exact"], "1");
  EXPECT_EQ(mj["hermite_invariant_pow"]["exact"], "4/3");
}

TEST_F(CliTest, VerifyProof) {
  CliRun const ok = Cli({"verify-proof", "--step", "1/50"});
  ASSERT_EQ(ok.code, kExitOk) << ok.err;
  auto const j = nlohmann::json::parse(ok.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  CliRun const fault = Cli({"verify-proof", "--step", "1/50", "--case", "NEG_KMAX", "--inject-fault"});
  EXPECT_EQ(fault.code, kExitVerificationFailure);
  EXPECT_NE(fault.err.find("violation in NEG_KMAX"), std::string::npos);
  EXPECT_EQ(Cli({"verify-proof", "--step", "1/10"}).code, kExitInvalidInput);
  EXPECT_EQ(Cli({"verify-proof", "--step", "x"}).code, kExitParse);
  EXPECT_EQ(Cli({"verify-proof", "--case", "NOPE"}).code, kExitParse);
}

TEST_F(CliTest, ExperimentIsDeterministic) {
  std::string const a = (dir_ / "a.csv").string(), b = (dir_ / "b.csv").string();
  CliRun const r1 = Cli({"experiment", "--rank", "3", "--trials", "20", "--seed", "4", "--out", a});
  CliRun const r2 = Cli({"experiment", "--rank", "3", "--trials", "20", "--seed", "4", "--out", b});
  ASSERT_EQ(r1.code, kExitOk) << r1.err;
  EXPECT_EQ(r1.out, r2.out);
  std::stringstream sa, sb;
  sa << std::ifstream(a).rdbuf();
  sb << std::ifstream(b).rdbuf();
  std::string const csv = sa.str();
  EXPECT_EQ(csv, sb.str());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 21);
  auto const j = nlohmann::json::parse(r1.out);
  EXPECT_EQ(j["max_defect"]["exact"], "25/12");
}

}  // namespace
}  // namespace hkz
