#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "modstat/convergence.hpp"

namespace modstat {

struct ThresholdOptions {
  ClassifierOptions classifier;
  std::size_t d_max = 8;
  // Check that x is f_lambda-statistically convergent to L before constructing.
  bool require_holds = true;
};

// levels[d] = N_d for d = 0..D with N_0 = 0, strictly increasing.
struct Thresholds {
  std::vector<std::size_t> levels;
  bool truncated = false;
  std::size_t failed_level = 0;  // first d without a valid N_d (when truncated)

  std::size_t depth() const noexcept { return levels.size() - 1; }
};

// N_d = smallest index with f(|{t in I_n : |x_t - L| >= 1/d}|) / f(lambda_n) < 1/d
// for every n in (N_d, horizon]. Throws PreconditionFailed when x is not convergent
// to L and ConstructionFailed when not even N_1 exists.
Thresholds thresholds(const SequencePrefix& x, double limit, const Modulus& m,
                      const LambdaSeq& s, const ThresholdOptions& opts = {});

struct Decomposition {
  std::vector<double> y;
  std::vector<double> z;
  Thresholds thresholds;
  double limit = 0.0;
  std::optional<DensityProfile> support_profile;

  IndexSet support() const;  // {t : z_t != 0}
};

// x = y + z: up to N_1 y = x; in stage d (N_d < t <= N_{d+1}) y_t = x_t when
// |x_t - L| < 1/d and y_t = L, z_t = x_t - L otherwise. The last stage runs to the end.
Decomposition decompose(const SequencePrefix& x, double limit, const Thresholds& th);

struct DecompositionVerification {
  bool reconstruction = false;
  double max_reconstruction_error = 0.0;
  bool y_converges = false;
  std::size_t convergence_failed_level = 0;  // d with sup_{t > N_d} |y_t - L| >= 1/d
  double convergence_excess = 0.0;
  bool support_null = false;
  DensityProfile support_profile;
  bool bounded = false;
  double bound = 0.0;  // sup|x| (or the bounded hint) + |L|
  std::vector<std::string> failures;

  bool all_passed() const noexcept {
    return reconstruction && y_converges && support_null && bounded;
  }
};

DecompositionVerification verify_decomposition(const SequencePrefix& x,
                                               const Decomposition& dec, const Modulus& m,
                                               const LambdaSeq& s,
                                               const DensityOptions& opts = {});

struct ExceptionalSet {
  IndexSet t;                          // the exceptional index set T
  std::vector<IndexSet> stage_sets;    // V_z for z = 1..z_max
  std::vector<std::size_t> anchors;    // i_1 < i_2 < ... < i_{z_max}
  DensityProfile density_profile;      // f_lambda-density of T
};

// V_z = {t : |x_t - L| > 1/z}; i_z = first index after which f(|V_z ∩ I_n|)/f(lambda_n)
// stays <= 1/z; T = union over z of [i_z, i_{z+1}) ∩ V_z, the last stage closed at the
// horizon. Throws ConstructionFailed naming z when an anchor is missing.
ExceptionalSet exceptional_set(const SequencePrefix& x, double limit, const Modulus& m,
                               const LambdaSeq& s, std::size_t z_max = 8,
                               const DensityOptions& opts = {});

struct OffTVerification {
  bool passed = true;
  std::size_t witness_t = 0;
  std::size_t level = 0;     // z whose bound 1/z was exceeded
  double deviation = 0.0;    // |x_t - L| at the witness
};

// For every z and t >= i_z outside T: |x_t - L| <= 1/z.
OffTVerification verify_off_t_convergence(const SequencePrefix& x, double limit,
                                          const ExceptionalSet& es);

}  // namespace modstat
