#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "modstat/density.hpp"
#include "modstat/lambda.hpp"
#include "modstat/modulus.hpp"

namespace modstat {

// Finite real sequence x_1..x_N (1-based access through at()).
class SequencePrefix {
 public:
  // Throws UsageError on an empty or non-finite sequence.
  explicit SequencePrefix(std::vector<double> values,
                          std::optional<double> known_limit = std::nullopt,
                          std::optional<double> bounded_hint = std::nullopt);

  std::size_t size() const noexcept { return values_.size(); }
  double at(std::size_t t) const { return values_[t - 1]; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::optional<double> known_limit() const noexcept { return known_limit_; }
  std::optional<double> bounded_hint() const noexcept { return bounded_hint_; }
  double sup_abs() const;

 private:
  std::vector<double> values_;
  std::optional<double> known_limit_;
  std::optional<double> bounded_hint_;
};

enum class ConvergenceMode {
  FStat,
  FLambdaStat,
  StrongLambdaSummable,
  StrongFLambdaSummable,
  FLambdaCauchy
};

enum class Status { Holds, Fails, Inconclusive };

const char* to_string(ConvergenceMode m);
const char* to_string(Status s);

struct ClassifierOptions {
  std::vector<double> xi{1.0, 0.5, 0.1, 0.05, 0.01};
  DensityOptions density;
};

std::vector<double> default_xi_list();

struct XiProfile {
  double xi = 0.0;
  DensityProfile profile;
  Status status = Status::Inconclusive;
};

struct ConvergenceReport {
  ConvergenceMode mode = ConvergenceMode::FLambdaStat;
  double limit = 0.0;
  std::vector<XiProfile> per_xi;                 // stat-convergence modes
  std::optional<DensityProfile> summability;     // summability modes
  Status status = Status::Inconclusive;

  bool holds() const noexcept { return status == Status::Holds; }
  double worst_tail_ratio() const;
};

// Zero -> Holds; One, Value or a tail bounded below by tau -> Fails.
Status status_of(const DensityProfile& p);

// {t : |x_t - L| >= xi}; xi > 0.
IndexSet exceedance_set(const SequencePrefix& x, double limit, double xi);

ConvergenceReport f_lambda_stat_convergent(const SequencePrefix& x, double limit,
                                           const Modulus& m, const LambdaSeq& s,
                                           const ClassifierOptions& opts = {});

ConvergenceReport f_stat_convergent(const SequencePrefix& x, double limit, const Modulus& m,
                                    const ClassifierOptions& opts = {});

// s_n = (1 / f(lambda_n)) * sum over t in I_n of f(|x_t - L|).
ConvergenceReport strong_f_lambda_summable(const SequencePrefix& x, double limit,
                                           const Modulus& m, const LambdaSeq& s,
                                           const ClassifierOptions& opts = {});

// s_n = (1 / lambda_n) * sum over t in I_n of |x_t - L|.
ConvergenceReport strong_lambda_summable(const SequencePrefix& x, double limit,
                                         const LambdaSeq& s,
                                         const ClassifierOptions& opts = {});

// Summability quantity normalized by lambda_n but summed over t = 1..n instead of
// I_n. Reported for transparency next to strong_lambda_summable, never asserted.
DensityProfile cumulative_lambda_average(const SequencePrefix& x, double limit,
                                         const LambdaSeq& s, const DensityOptions& opts = {});

struct CauchyResult {
  Status status = Status::Inconclusive;
  std::optional<std::size_t> witness_q;
  std::vector<std::size_t> candidates;
  double best_tail_max = 0.0;  // smallest tail max among the tried candidates
};

// Termwise statistical Cauchy test at one xi: looks for Q whose set
// {t : |x_t - x_Q| >= xi} has f_lambda-density verdict Zero.
CauchyResult f_lambda_stat_cauchy(const SequencePrefix& x, const Modulus& m,
                                  const LambdaSeq& s, double xi,
                                  const ClassifierOptions& opts = {},
                                  std::size_t candidate_count = 32);

struct CauchyReport {
  Status status = Status::Inconclusive;
  std::vector<std::pair<double, CauchyResult>> per_xi;
};

// Cauchy test over every xi in opts.xi; Holds iff each xi has a witness.
CauchyReport f_lambda_stat_cauchy_all(const SequencePrefix& x, const Modulus& m,
                                      const LambdaSeq& s, const ClassifierOptions& opts = {},
                                      std::size_t candidate_count = 32);

// Candidate statistical limit from a width-xi histogram of the tail half. Needs N >= 100.
std::optional<double> estimate_stat_limit(const SequencePrefix& x, const Modulus& m,
                                          const LambdaSeq& s, double xi,
                                          const DensityOptions& opts = {});

}  // namespace modstat
