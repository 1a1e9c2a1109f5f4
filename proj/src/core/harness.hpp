#pragma once

// Suite runner: seeded trials per theorem, deterministic aggregation in
// trial-index order (so reports are identical no matter how many workers
// ran them), and JSON serialization. Wall-clock timings stay out of the
// JSON on purpose: report files are byte-reproducible.

#include <nlohmann/json.hpp>

#include "checkers.hpp"

namespace pentagram {

using ordered_json = nlohmann::ordered_json;

struct SuiteOptions {
  Theorem theorem = Theorem::Miquel;
  Mode mode;                  // exact, or float with mantissa bits
  GeneratorSpec generator;
  int trials = 1;
  std::optional<double> rel_pass_override;
  bool negative_control = false;
  double control_magnitude = 1e-3;
  int workers = 0;            // 0: PENTAGRAM_WORKERS env or hardware concurrency
  std::string input_label;    // set when checking a supplied configuration

  Tolerance tolerance() const;
  void validate() const;
};

struct SuiteReport {
  SuiteOptions options;
  Tolerance tolerance;
  std::vector<TheoremReport> trials;
  int pass = 0, fail = 0, indeterminate = 0, degenerate = 0;
  double max_residual = 0.0;
  double elapsed_seconds = 0.0;

  Verdict overall() const {
    if (fail > 0) return Verdict::Fail;
    if (degenerate > 0) return Verdict::Degenerate;
    if (indeterminate > 0) return Verdict::Indeterminate;
    return Verdict::Pass;
  }

  // 0 all pass, 1 any fail, 2 only degenerate/indeterminate issues
  int exit_code() const {
    if (fail > 0) return 1;
    if (degenerate > 0 || indeterminate > 0) return 2;
    return 0;
  }
};

TheoremReport run_trial(const SuiteOptions& options, std::uint64_t trial_index);
SuiteReport run_suite(const SuiteOptions& options);

// Number of workers run_suite would use for `trials` trials.
int resolve_workers(int requested, int trials);

ordered_json to_json(const SolveReport& rep);
ordered_json to_json(const TheoremReport& rep);
ordered_json to_json(const SuiteReport& rep);
std::string summary(const SuiteReport& rep);

// Single supplied configuration (CLI --input). Points are exact rationals or
// binary doubles; `bits` is the evaluation precision in float mode.
SuiteReport check_single_exact(Theorem t, const Penta<Rat>& A, const std::optional<Penta<Rat>>& B,
                               const SuiteOptions& options);
SuiteReport check_single_float(Theorem t, const Penta<double>& A,
                               const std::optional<Penta<double>>& B, const SuiteOptions& options);

}  // namespace pentagram
