#pragma once

#include "ruusc/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ruusc {

/// Exit codes of the problem runner (and of the CLI):
///   0  statement verified (pass)
///   1  statement failed: a numerical counterexample candidate
///   2  hypotheses not met or not establishable: the verifier refused to run
///   3  malformed problem description or internal error
enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kRefused = 2,
  kSpecError = 3,
};

struct RunOptions {
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  int threads = 1;
  int resolution_scale = 1;
};

struct RunOutcome {
  int exit_code = kSpecError;
  std::string statement;
  std::string verdict;  // "pass", "fail", "refused", "spec-error"
  double max_gap = 0.0;
  double runtime_ms = 0.0;
  std::string message;
  std::vector<std::string> files_written;
};

/// Runs one problem description (JSON text). Writes report files under
/// options.out_dir with the spec's out_prefix. Never throws for statement
/// outcomes; exceptions are folded into the exit code.
RunOutcome run_problem_text(const std::string& json_text, const RunOptions& options);

RunOutcome run_problem_file(const std::string& path, const RunOptions& options);

/// Runs every spec of a suite file and writes out_dir/summary.csv with one
/// row per spec (statement, prefix, verdict, max_gap, runtime_ms; the
/// runtime column is informational and excluded from reproducibility
/// comparisons). Returns the worst member exit code; an empty suite is a
/// spec error.
int run_suite_file(const std::string& path, const RunOptions& options,
                   std::vector<RunOutcome>* outcomes = nullptr);

}  // namespace ruusc
