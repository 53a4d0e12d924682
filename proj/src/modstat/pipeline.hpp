#pragma once

#include <optional>
#include <string>

#include "modstat/config.hpp"
#include "modstat/decompose.hpp"
#include "modstat/report.hpp"
#include "modstat/theorem_lab.hpp"

namespace modstat {

// Report documents share one layout:
//   {meta: {config, version, seed}, results: [{mode, params, verdict, profiles,
//    diagnostics}], summary}

struct ValidateResult {
  Json report;
  bool all_passed = false;
};

ValidateResult run_validate(const Modulus& m, const LambdaSeq& s, std::size_t horizon);

struct AnalyzeOptions {
  std::optional<double> limit;  // estimated from the data when absent
  ClassifierOptions classifier;
  std::size_t candidate_count = 32;
  // Points for every profile. Off: only the smallest-xi f_lambda profile and the
  // summability profiles carry points, which keeps horizon-1e6 reports < 10 MB.
  bool all_profiles = false;
};

AnalyzeOptions analyze_options_from_json(const Json& j);

struct AnalyzeResult {
  Json report;
  Status verdict = Status::Inconclusive;  // f_lambda-statistical verdict
  DensityProfile profile;                 // smallest-xi f_lambda profile, for CSV output
};

AnalyzeResult run_analyze(const SequencePrefix& x, const Modulus& m, const LambdaSeq& s,
                          const AnalyzeOptions& opts);

struct DecomposeResult {
  Json report;
  Decomposition decomposition;
  DecompositionVerification verification;
};

// Throws PreconditionFailed / ConstructionFailed from the threshold construction.
DecomposeResult run_decompose(const SequencePrefix& x, double limit, const Modulus& m,
                              const LambdaSeq& s, const ThresholdOptions& opts);

Json to_json(const TheoremCheck& c);
Json to_json(const SuiteReport& r, const RunConfig& config);

}  // namespace modstat
