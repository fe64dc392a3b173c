#include "hkz/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hkz/bounds.hpp"
#include "hkz/error.hpp"
#include "hkz/experiments.hpp"
#include "hkz/gram_io.hpp"
#include "hkz/json_util.hpp"
#include "hkz/parallel.hpp"
#include "hkz/proof_verify.hpp"
#include "hkz/reduction.hpp"

namespace hkz {
namespace {

enum class Format { kText, kJson, kCsv };

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kVerification:
      return kExitVerificationFailure;
    case ErrorKind::kParse:
      return kExitParse;
    case ErrorKind::kInvalidInput:
      return kExitInvalidInput;
    case ErrorKind::kUnsupported:
      return kExitUnsupported;
  }
  return kExitInvalidInput;
}

std::string Exact(Rat const& v) { return ToString(v) + " (" + ToDecimal(v) + ")"; }

std::string Csv(Matrix<Rat> const& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      out << (j ? "," : "") << ToString(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string VectorText(IntVector const& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? ", " : "") + ToString(v[i]);
  }
  return s + ")";
}

int Reduce(std::string const& path, Format format, std::ostream& out) {
  GramMatrix const g = ReadGramFile(path);
  HkzCertificate const before = IsHkzReduced(g);
  ReductionReport const r = HkzReduce(g);
  HkzCertificate const after = IsHkzReduced(r.reduced);
  Rat const defect = OrthogonalityDefect(r.reduced);
  if (!after.reduced) {
    Fail(ErrorKind::kVerification, "reduced basis failed certification: " +
                                       after.failure);
  }
  switch (format) {
    case Format::kJson: {
      nlohmann::json j = {
          {"input_hkz_reduced", before.reduced},
          {"reduced", MatrixJson(r.reduced.entries())},
          {"transform", MatrixJson(r.transform.entries())},
          {"certified_hkz", after.reduced},
          {"defect", RationalJson(defect)},
          {"svp_calls", r.svp_calls},
          {"nodes", r.total_nodes},
      };
      out << j.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      out << Csv(r.reduced.entries());
      break;
    case Format::kText:
      if (before.reduced) out << "already HKZ reduced\n";
      out << "reduced Gram:\n" << FormatGram(r.reduced)
          << "transform:\n" << FormatMatrix(r.transform.entries())
          << "certificate: HKZ reduced\n"
          << "defect: " << Exact(defect) << '\n'
          << "svp calls: " << r.svp_calls << ", nodes: " << r.total_nodes
          << '\n';
      break;
  }
  return kExitOk;
}

int Defect(std::string const& path, Format format, std::ostream& out) {
  GramMatrix const g = ReadGramFile(path);
  HkzCertificate const cert = IsHkzReduced(g);
  Rat const input_defect = OrthogonalityDefect(g);
  ReductionReport const r = HkzReduce(g);
  Rat const hkz_defect = OrthogonalityDefect(r.reduced);
  std::size_t const n = g.rank();
  std::optional<Rat> lls;
  if (n <= kMaxHermiteRank) lls = LlsBound(n);
  switch (format) {
    case Format::kJson: {
      nlohmann::json j = {
          {"rank", n},
          {"defect", RationalJson(input_defect)},
          {"hkz_reduced", cert.reduced},
          {"hkz_defect", RationalJson(hkz_defect)},
          {"lls_bound", lls ? RationalJson(*lls) : nlohmann::json(nullptr)},
      };
      if (!cert.reduced) j["hkz_failure"] = cert.failure;
      out << j.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      out << "rank,defect,hkz_reduced,hkz_defect\n"
          << n << ',' << ToString(input_defect) << ','
          << (cert.reduced ? "true" : "false") << ',' << ToString(hkz_defect)
          << '\n';
      break;
    case Format::kText:
      out << "defect: " << Exact(input_defect) << '\n';
      if (cert.reduced) {
        out << "input is HKZ reduced\n";
      } else {
        out << "input is not HKZ reduced: " << cert.failure << '\n';
      }
      out << "defect after HKZ reduction: " << Exact(hkz_defect) << '\n';
      if (lls) out << "LLS bound: " << Exact(*lls) << '\n';
      break;
  }
  return kExitOk;
}

int Minima(std::string const& path, Format format, std::ostream& out) {
  GramMatrix const g = ReadGramFile(path);
  if (g.rank() > kMaxMinimaRank) {
    Fail(ErrorKind::kUnsupported, "successive minima limited to rank " +
                                      std::to_string(kMaxMinimaRank));
  }
  SuccessiveMinima const m = ComputeSuccessiveMinima(g);
  Rat const hermite = HermiteInvariantPower(g);
  switch (format) {
    case Format::kJson: {
      nlohmann::json minima = nlohmann::json::array();
      for (std::size_t i = 0; i < m.minima_sq.size(); ++i) {
        minima.push_back({{"index", i + 1},
                          {"norm_sq", RationalJson(m.minima_sq[i])},
                          {"witness", VectorJson(m.witnesses[i])}});
      }
      out << nlohmann::json{{"minima", minima},
                            {"hermite_invariant_pow", RationalJson(hermite)}}
                 .dump(2)
          << '\n';
      break;
    }
    case Format::kCsv:
      out << "index,norm_sq,witness\n";
      for (std::size_t i = 0; i < m.minima_sq.size(); ++i) {
        std::string w;
        for (std::size_t j = 0; j < m.witnesses[i].size(); ++j) {
          w += (j ? " " : "") + ToString(m.witnesses[i][j]);
        }
        out << i + 1 << ',' << ToString(m.minima_sq[i]) << ',' << w << '\n';
      }
      break;
    case Format::kText:
      for (std::size_t i = 0; i < m.minima_sq.size(); ++i) {
        out << "lambda_" << i + 1 << "^2 = " << Exact(m.minima_sq[i])
            << "  witness " << VectorText(m.witnesses[i]) << '\n';
      }
      out << "hermite invariant^n: " << Exact(hermite) << '\n';
      break;
  }
  return kExitOk;
}

int Bounds(std::size_t max_rank, Format format, std::ostream& out) {
  std::vector<BoundRow> const rows = BoundTable(max_rank);
  switch (format) {
    case Format::kJson:
      out << BoundTableJson(rows);
      break;
    case Format::kCsv:
      out << BoundTableCsv(rows);
      break;
    case Format::kText:
      out << BoundTableText(rows);
      break;
  }
  return kExitOk;
}

void WriteProofText(ProofCertificate const& cert, std::ostream& out) {
  out << "grid re-verification at step " << ToString(cert.step)
      << " (exact at grid points only)\n";
  for (CaseScanReport const& c : cert.cases) {
    out << CaseName(c.id) << ": points=" << c.points_checked
        << " max=" << ToString(c.max_value)
        << " violations=" << c.violation_count << " equality=";
    for (CasePoint const& p : c.equality_points) {
      out << '(' << ToString(p.lambda) << ',' << ToString(p.mu) << ','
          << ToString(p.sigma) << ')';
    }
    out << (c.passed ? " PASS" : " FAIL") << '\n';
  }
  for (ConsistencyReport const& c : cert.consistency) {
    out << CaseName(c.id) << " consistency: " << c.agreements << '/'
        << c.samples << (c.passed ? " PASS" : " FAIL") << '\n';
  }
  out << "small sigma: " << (cert.small_sigma.passed ? "PASS" : "FAIL") << '\n';
  for (ConvexityCertificate const& c : cert.convexity) {
    out << "convexity " << BranchName(c.which) << ": samples="
        << c.samples.size() << (c.passed ? " PASS" : " FAIL") << '\n';
  }
  out << "extremal form: " << (cert.extremal.passed ? "PASS" : "FAIL") << '\n';
  out << (cert.passed ? "all checks passed" : "verification FAILED") << '\n';
}

int VerifyProofCommand(std::string const& step_text,
                       std::optional<std::string> const& case_name,
                       bool inject_fault, Format format, std::ostream& out,
                       std::ostream& err) {
  ProofOptions options;
  options.step = ParseRational(step_text);
  if (options.step <= 0 || options.step > Rat(1, 50)) {
    Fail(ErrorKind::kInvalidInput, "step must be a positive rational <= 1/50");
  }
  if (case_name) options.only_case = ParseCaseId(*case_name);
  options.inject_fault = inject_fault;
  options.workers = WorkerCount();
  ProofCertificate const cert = VerifyProof(options);
  if (format == Format::kText) {
    WriteProofText(cert, out);
  } else {
    out << ProofCertificateJson(cert).dump(2) << '\n';
  }
  if (cert.passed) return kExitOk;
  for (CaseScanReport const& c : cert.cases) {
    if (c.violations.empty()) continue;
    CasePoint const& p = c.violations.front();
    err << "violation in " << CaseName(c.id) << " at lambda="
        << ToString(p.lambda) << " mu=" << ToString(p.mu)
        << " sigma=" << ToString(p.sigma) << '\n';
  }
  err << "verification failed\n";
  return kExitVerificationFailure;
}

int ExperimentCommand(ExperimentConfig config,
                      std::optional<std::string> const& csv_path,
                      Format format, std::ostream& out, std::ostream& err) {
  config.workers = WorkerCount();
  ExperimentResult const result = RunExperiment(config);
  std::string const csv = ExperimentCsv(result.records);
  if (csv_path) {
    std::ofstream file(*csv_path, std::ios::binary);
    if (!file) {
      Fail(ErrorKind::kInvalidInput, "cannot write '" + *csv_path + "'");
    }
    file << csv;
  }
  ExperimentSummary const& s = result.summary;
  switch (format) {
    case Format::kCsv:
      out << csv;
      break;
    case Format::kJson:
      out << ExperimentSummaryJson(s).dump(2) << '\n';
      break;
    case Format::kText:
      out << "trials: " << s.trials << ", failures: " << s.failures << '\n'
          << "max defect: " << Exact(s.max_defect) << " (trial "
          << s.max_defect_trial << ")\n"
          << "gamma_n^n: " << Exact(s.gamma_pow) << ", max defect "
          << (s.max_defect_within_conjecture ? "<=" : ">") << " gamma_n^n\n";
      if (s.new_bound) out << "new bound: " << Exact(*s.new_bound) << '\n';
      if (s.delta_exact) out << "exact maximum: " << Exact(*s.delta_exact) << '\n';
      break;
  }
  if (!s.passed) {
    err << s.failures << " trial(s) violated a proven bound\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

}  // namespace

int RunCli(std::vector<std::string> const& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Exact HKZ reduction and orthogonality defect tools", "hkz"};
  app.require_subcommand(1, 1);
  app.allow_extras(false);

  std::string format_name;
  app.add_option("--format", format_name, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  std::string path;
  auto* reduce = app.add_subcommand("reduce", "HKZ-reduce a Gram matrix file");
  reduce->add_option("file", path, "Gram matrix file")->required();
  auto* defect = app.add_subcommand("defect", "orthogonality defect of a Gram matrix file");
  defect->add_option("file", path, "Gram matrix file")->required();
  auto* minima = app.add_subcommand("minima", "successive minima of a Gram matrix file");
  minima->add_option("file", path, "Gram matrix file")->required();

  std::size_t max_rank = 8;
  auto* bounds = app.add_subcommand("bounds", "defect bound table");
  bounds->add_option("--max-rank", max_rank, "largest rank")->required();

  std::string step = "1/100";
  std::optional<std::string> case_name;
  bool inject_fault = false;
  auto* verify = app.add_subcommand("verify-proof", "grid re-verification of the rank-3 bound");
  verify->add_option("--step", step, "grid step p/q, at most 1/50");
  verify->add_option("--case", case_name, "NEG_KMIN, NEG_KMAX, POS_KMIN or POS_KMAX");
  verify->add_flag("--inject-fault", inject_fault, "perturb one coefficient (negative control)");

  ExperimentConfig config;
  std::optional<std::string> csv_path;
  auto* experiment = app.add_subcommand("experiment", "random lattice ensemble");
  experiment->add_option("--rank", config.rank, "rank 2..6")->required();
  experiment->add_option("--trials", config.trials, "number of trials");
  experiment->add_option("--seed", config.seed, "master seed");
  experiment->add_option("--entry-bound", config.entry_bound, "max |entry| of the generator matrix");
  experiment->add_option("--out", csv_path, "CSV output file");

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--format", format_name, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kExitOk;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  auto format = [&](Format fallback) {
    if (format_name == "json") return Format::kJson;
    if (format_name == "csv") return Format::kCsv;
    if (format_name == "text") return Format::kText;
    return fallback;
  };

  try {
    if (reduce->parsed()) return Reduce(path, format(Format::kText), out);
    if (defect->parsed()) return Defect(path, format(Format::kText), out);
    if (minima->parsed()) return Minima(path, format(Format::kText), out);
    if (bounds->parsed()) return Bounds(max_rank, format(Format::kText), out);
    if (verify->parsed()) {
      return VerifyProofCommand(step, case_name, inject_fault,
                                format(Format::kJson), out, err);
    }
    return ExperimentCommand(config, csv_path, format(Format::kJson), out, err);
  } catch (Error const& e) {
    err << "error: " << e.what() << '\n';
    return ExitCode(e.kind());
  }
}

}  // namespace hkz
