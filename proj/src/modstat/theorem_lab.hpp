#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modstat/config.hpp"
#include "modstat/convergence.hpp"
#include "modstat/decompose.hpp"
#include "modstat/sequence_io.hpp"

namespace modstat {

enum class TheoremId {
  T1,
  T1_converse,
  C1_unique,
  C1_linear,
  T2,
  T3,
  D1_C2,
  T5,
  T7,
  T8,
  T9_1,
  T9_2,
  C4,
  T10
};

inline constexpr std::array<TheoremId, 14> kAllTheorems{
    TheoremId::T1,   TheoremId::T1_converse, TheoremId::C1_unique, TheoremId::C1_linear,
    TheoremId::T2,   TheoremId::T3,          TheoremId::D1_C2,     TheoremId::T5,
    TheoremId::T7,   TheoremId::T8,          TheoremId::T9_1,      TheoremId::T9_2,
    TheoremId::C4,   TheoremId::T10};

enum class Outcome { Supported, HypothesisNotMet, Violated, Inconclusive };

const char* to_string(TheoremId id);
const char* to_string(Outcome o);

// A sequence under test together with the limit the checks use.
struct Subject {
  SequencePrefix x;
  double limit = 0.0;
  std::string label;
  std::optional<Json> spec;  // generator spec, when the sequence came from one

  // Uses x.known_limit(), else estimate_stat_limit at the smallest xi, else the
  // median of the tail half.
  static Subject from(SequencePrefix x, std::string label, const Modulus& m,
                      const LambdaSeq& s, const ClassifierOptions& opts);
};

struct LabOptions {
  ClassifierOptions classifier;
  std::size_t d_max = 8;
  std::size_t z_max = 8;
  std::size_t candidate_count = 32;
};

struct TheoremCheck {
  TheoremId id = TheoremId::T1;
  bool hypothesis_met = false;
  Json hypothesis;   // estimator outputs
  Json conclusion;   // classifier outputs
  Outcome outcome = Outcome::Inconclusive;
  bool vacuous = false;  // Supported because the antecedent failed
  Json recipe;           // everything needed to rerun the check
};

// Caches classifier runs for one (sequence, modulus) pair across checks.
class LabContext {
 public:
  LabContext(const Subject& subject, Modulus m, LabOptions opts);

  const Subject& subject() const noexcept { return subject_; }
  const Modulus& modulus() const noexcept { return m_; }
  const LabOptions& options() const noexcept { return opts_; }

  const ConvergenceReport& f_lambda_stat(const LambdaSeq& s);
  const ConvergenceReport& f_stat();
  const ConvergenceReport& strong_f_lambda(const LambdaSeq& s);
  const ConvergenceReport& strong_lambda(const LambdaSeq& s);
  const CauchyReport& cauchy(const LambdaSeq& s);
  const MaddoxEstimate& maddox();
  const LimitRatio& limit_ratio();

  Json recipe(const std::string& lambda, const std::optional<std::string>& mu = {}) const;

 private:
  const Subject& subject_;
  Modulus m_;
  LabOptions opts_;
  std::map<std::string, ConvergenceReport> stat_, strong_f_, strong_;
  std::map<std::string, CauchyReport> cauchy_;
  std::optional<ConvergenceReport> f_stat_;
  std::optional<MaddoxEstimate> maddox_;
  std::optional<LimitRatio> limit_ratio_;
};

// Implication bookkeeping shared by every check.
Outcome implication_outcome(bool hypothesis_met, Status antecedent, Status conclusion,
                            bool* vacuous);

// {T1, T1_converse}: strong lambda-summability => f_lambda-statistical convergence,
// and the converse for bounded sequences. Hypotheses: Maddox constant, f(u)/u > 0.
std::array<TheoremCheck, 2> check_t1(LabContext& ctx, const LambdaSeq& s);
// Decomposition x = y + z under the T1 hypotheses.
TheoremCheck check_t2(LabContext& ctx, const LambdaSeq& s);
// Exceptional set T of f_lambda-density zero off which x converges.
TheoremCheck check_t3(LabContext& ctx, const LambdaSeq& s);
// {D1_C2, T5}: convergence => statistically Cauchy and back.
std::array<TheoremCheck, 2> check_cauchy_equiv(LabContext& ctx, const LambdaSeq& s);
// f_lambda-stat => f-stat when liminf n / f(lambda_n) > 0 (and f(u)/u > 0).
TheoremCheck check_t7(LabContext& ctx, const LambdaSeq& s);
// f-stat => f_lambda-stat when n / f(lambda_n) -> 1.
TheoremCheck check_t8(LabContext& ctx, const LambdaSeq& s);
// {T9_1, T9_2}. Throws UsageError when lambda_n > mu_n somewhere on the horizon.
std::array<TheoremCheck, 2> check_t9(LabContext& ctx, const LambdaSeq& lambda,
                                     const LambdaSeq& mu);
// {T10, C4}: strong f_mu-summability => S_{f_lambda} and => strong f_lambda-summability.
std::array<TheoremCheck, 2> check_t10_c4(LabContext& ctx, const LambdaSeq& lambda,
                                         const LambdaSeq& mu);
// {C1_unique, C1_linear} for the pair (ctx subject, other) with scale alpha.
std::array<TheoremCheck, 2> check_c1(LabContext& ctx, const Subject& other,
                                     const LambdaSeq& s, double alpha);

struct SuiteReport {
  std::vector<TheoremCheck> checks;
  std::map<TheoremId, std::map<Outcome, std::size_t>> counts;
  std::map<TheoremId, std::size_t> non_vacuous_supported;
  std::size_t violated = 0;
  std::size_t sequences = 0;
  bool coverage_met = false;

  bool passed() const noexcept { return violated == 0 && coverage_met; }
};

// Cartesian sweep over corpus x moduli x lambdas running every check.
SuiteReport run_suite(const RunConfig& config);

}  // namespace modstat
