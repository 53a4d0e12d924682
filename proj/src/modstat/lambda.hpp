#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modstat/modulus.hpp"

namespace modstat {

enum class LambdaKind { Full, Affine, Sqrt, LogGrow, Pluggable };

// A sequence (lambda_n) from the class: lambda_1 = 1, nondecreasing, increments <= 1.
class LambdaSeq {
 public:
  using Generator = std::function<double(std::size_t)>;

  static LambdaSeq full();
  static LambdaSeq affine(double a);  // 1 + a (n - 1), a in (0, 1]
  static LambdaSeq sqrt();
  static LambdaSeq log_grow();        // 1 + ln n
  static LambdaSeq pluggable(Generator g, std::string name);

  // Accepts `full`, `affine:<a>`, `sqrt`, `loggrow`.
  static LambdaSeq parse(std::string_view name);

  // lambda_n for n >= 1. Throws DomainError for n = 0 or a non-positive value.
  double at(std::size_t n) const;
  double operator()(std::size_t n) const { return at(n); }

  LambdaKind kind() const noexcept { return kind_; }
  double slope() const noexcept { return slope_; }
  const std::string& name() const noexcept { return name_; }

 private:
  LambdaSeq(LambdaKind kind, double slope, std::string name, Generator g = {})
      : kind_(kind), slope_(slope), name_(std::move(name)), plugged_(std::move(g)) {}

  LambdaKind kind_;
  double slope_;
  std::string name_;
  Generator plugged_;
};

// Integer indices t with n - lambda_n + 1 <= t <= n.
struct Window {
  std::size_t n = 1;
  std::size_t start = 1;
  std::size_t end = 1;
  std::size_t count = 1;
};

// start = max(1, ceil(n - lambda_n + 1)), clamped to n so count >= 1.
Window window(const LambdaSeq& s, std::size_t n);

// Window starts and normalizers for n = 1..horizon, shared by every profile sweep.
class WindowSchedule {
 public:
  static WindowSchedule for_lambda(const LambdaSeq& s, std::size_t horizon);
  // I_n = [1, n] with normalizer n: the plain (non-lambda) densities.
  static WindowSchedule cumulative(std::size_t horizon);

  std::size_t horizon() const noexcept { return starts_.size(); }
  std::size_t start(std::size_t n) const { return starts_[n - 1]; }
  double length(std::size_t n) const { return lengths_[n - 1]; }

 private:
  std::vector<std::size_t> starts_;
  std::vector<double> lengths_;
};

struct LambdaValidationReport {
  bool first_is_one = true;
  double first_value = 1.0;
  bool nondecreasing = true;
  std::size_t nondecreasing_violation = 0;  // first n with lambda_{n+1} < lambda_n
  bool slow_growth = true;
  std::size_t slow_growth_violation = 0;    // first n with lambda_{n+1} > lambda_n + 1
  double growth_evidence = 0.0;             // lambda_horizon
  std::size_t horizon = 0;

  bool all_passed() const noexcept { return first_is_one && nondecreasing && slow_growth; }
};

// Throws UsageError when horizon < 2.
LambdaValidationReport validate_lambda(const LambdaSeq& s, std::size_t horizon);

struct RatioLiminf {
  double estimate = 0.0;           // min of a_n / b_n over [horizon/2, horizon]
  double previous_estimate = 0.0;  // same over [horizon/4, horizon/2)
  bool hypothesis_met = false;
};

// liminf a_n / b_n > 0 estimated on the tail half. A tail minimum that has shrunk by
// more than 10% against the preceding quarter counts as decaying to zero.
RatioLiminf ratio_liminf(const LambdaSeq& a, const LambdaSeq& b, std::size_t horizon);

struct RatioNOverFLambda {
  double liminf_estimate = 0.0;
  double previous_estimate = 0.0;
  bool liminf_positive = false;
  bool lim_is_one = false;  // every tail-half value within 0.05 of 1
};

RatioNOverFLambda ratio_n_over_f_lambda(const Modulus& m, const LambdaSeq& s,
                                        std::size_t horizon);

// All tail-half values of mu_n / lambda_n within `tol` of 1.
bool ratio_tends_to_one(const LambdaSeq& lambda, const LambdaSeq& mu, std::size_t horizon,
                        double tol = 0.05);

// First n <= horizon with lambda_n > mu_n, if any.
std::optional<std::size_t> domination_violation(const LambdaSeq& lambda, const LambdaSeq& mu,
                                                std::size_t horizon);

}  // namespace modstat
