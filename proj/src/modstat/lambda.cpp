#include "modstat/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modstat/error.hpp"
#include "modstat/text.hpp"

namespace modstat {

LambdaSeq LambdaSeq::full() { return {LambdaKind::Full, 1.0, "full"}; }

LambdaSeq LambdaSeq::affine(double a) {
  if (!(a > 0.0 && a <= 1.0)) {
    throw UsageError("affine lambda slope must lie in (0, 1], got " + format_double(a));
  }
  return {LambdaKind::Affine, a, "affine:" + format_double(a)};
}

LambdaSeq LambdaSeq::sqrt() { return {LambdaKind::Sqrt, 0.0, "sqrt"}; }

LambdaSeq LambdaSeq::log_grow() { return {LambdaKind::LogGrow, 0.0, "loggrow"}; }

LambdaSeq LambdaSeq::pluggable(Generator g, std::string name) {
  if (!g) throw UsageError("pluggable lambda needs a generator");
  return {LambdaKind::Pluggable, 0.0, std::move(name), std::move(g)};
}

LambdaSeq LambdaSeq::parse(std::string_view name) {
  if (name == "full") return full();
  if (name == "sqrt") return sqrt();
  if (name == "loggrow") return log_grow();
  if (name.starts_with("affine:")) {
    auto a = parse_double(name.substr(7));
    if (!a) throw UsageError("bad slope in lambda name '" + std::string(name) + "'");
    return affine(*a);
  }
  throw UsageError("unknown lambda '" + std::string(name) + "'");
}

double LambdaSeq::at(std::size_t n) const {
  if (n == 0) throw DomainError("lambda_n is defined for n >= 1");
  const double nd = static_cast<double>(n);
  double v = 0.0;
  switch (kind_) {
    case LambdaKind::Full: v = nd; break;
    case LambdaKind::Affine: v = 1.0 + slope_ * (nd - 1.0); break;
    case LambdaKind::Sqrt: v = std::sqrt(nd); break;
    case LambdaKind::LogGrow: v = 1.0 + std::log(nd); break;
    case LambdaKind::Pluggable: v = plugged_(n); break;
  }
  if (!std::isfinite(v) || v <= 0.0) {
    throw DomainError("lambda " + name_ + " is not a positive number at n = " +
                      std::to_string(n));
  }
  return v;
}

namespace {

std::size_t window_start(std::size_t n, double lambda_n) {
  const double lo = std::ceil(static_cast<double>(n) - lambda_n + 1.0);
  if (lo <= 1.0) return 1;
  return std::min(n, static_cast<std::size_t>(lo));
}

}  // namespace

Window window(const LambdaSeq& s, std::size_t n) {
  const std::size_t start = window_start(n, s.at(n));
  return {n, start, n, n - start + 1};
}

WindowSchedule WindowSchedule::for_lambda(const LambdaSeq& s, std::size_t horizon) {
  WindowSchedule w;
  w.starts_.resize(horizon);
  w.lengths_.resize(horizon);
  for (std::size_t n = 1; n <= horizon; ++n) {
    const double l = s.at(n);
    w.lengths_[n - 1] = l;
    w.starts_[n - 1] = window_start(n, l);
  }
  return w;
}

WindowSchedule WindowSchedule::cumulative(std::size_t horizon) {
  WindowSchedule w;
  w.starts_.assign(horizon, 1);
  w.lengths_.resize(horizon);
  for (std::size_t n = 1; n <= horizon; ++n) w.lengths_[n - 1] = static_cast<double>(n);
  return w;
}

LambdaValidationReport validate_lambda(const LambdaSeq& s, std::size_t horizon) {
  if (horizon < 2) throw UsageError("lambda validation horizon must be >= 2");
  LambdaValidationReport r;
  r.horizon = horizon;
  r.first_value = s.at(1);
  r.first_is_one = r.first_value == 1.0;
  double prev = r.first_value;
  for (std::size_t n = 1; n < horizon; ++n) {
    const double next = s.at(n + 1);
    if (r.nondecreasing && next < prev - 1e-12) {
      r.nondecreasing = false;
      r.nondecreasing_violation = n;
    }
    if (r.slow_growth && next > prev + 1.0 + 1e-12) {
      r.slow_growth = false;
      r.slow_growth_violation = n;
    }
    prev = next;
  }
  r.growth_evidence = prev;
  return r;
}

namespace {

void require_tail_horizon(std::size_t horizon) {
  if (horizon < 1000) throw UsageError("tail estimators need a horizon >= 1000");
}

template <class F>
double min_over(std::size_t lo, std::size_t hi, F&& f) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t n = lo; n <= hi; ++n) m = std::min(m, f(n));
  return m;
}

}  // namespace

RatioLiminf ratio_liminf(const LambdaSeq& a, const LambdaSeq& b, std::size_t horizon) {
  require_tail_horizon(horizon);
  auto ratio = [&](std::size_t n) { return a.at(n) / b.at(n); };
  RatioLiminf r;
  r.estimate = min_over(horizon / 2, horizon, ratio);
  r.previous_estimate = min_over(horizon / 4, horizon / 2 - 1, ratio);
  r.hypothesis_met = r.estimate > 1e-6 && r.estimate >= 0.9 * r.previous_estimate;
  return r;
}

RatioNOverFLambda ratio_n_over_f_lambda(const Modulus& m, const LambdaSeq& s,
                                        std::size_t horizon) {
  require_unbounded(m, "n / f(lambda_n)");
  require_tail_horizon(horizon);
  auto ratio = [&](std::size_t n) { return static_cast<double>(n) / m(s.at(n)); };
  RatioNOverFLambda r;
  r.liminf_estimate = min_over(horizon / 2, horizon, ratio);
  r.previous_estimate = min_over(horizon / 4, horizon / 2 - 1, ratio);
  r.liminf_positive =
      r.liminf_estimate > 1e-6 && r.liminf_estimate >= 0.9 * r.previous_estimate;
  r.lim_is_one = true;
  for (std::size_t n = horizon / 2; n <= horizon && r.lim_is_one; ++n) {
    r.lim_is_one = std::abs(ratio(n) - 1.0) <= 0.05;
  }
  return r;
}

bool ratio_tends_to_one(const LambdaSeq& lambda, const LambdaSeq& mu, std::size_t horizon,
                        double tol) {
  require_tail_horizon(horizon);
  for (std::size_t n = horizon / 2; n <= horizon; ++n) {
    if (std::abs(mu.at(n) / lambda.at(n) - 1.0) > tol) return false;
  }
  return true;
}

std::optional<std::size_t> domination_violation(const LambdaSeq& lambda, const LambdaSeq& mu,
                                                std::size_t horizon) {
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (lambda.at(n) > mu.at(n) + 1e-12) return n;
  }
  return std::nullopt;
}

}  // namespace modstat
