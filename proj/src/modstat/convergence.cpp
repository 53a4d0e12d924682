#include "modstat/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "modstat/error.hpp"
#include "modstat/text.hpp"

namespace modstat {

SequencePrefix::SequencePrefix(std::vector<double> values, std::optional<double> known_limit,
                               std::optional<double> bounded_hint)
    : values_(std::move(values)), known_limit_(known_limit), bounded_hint_(bounded_hint) {
  if (values_.empty()) throw UsageError("sequence prefix is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw UsageError("sequence value x_" + std::to_string(i + 1) + " is not finite");
    }
  }
}

double SequencePrefix::sup_abs() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

const char* to_string(ConvergenceMode m) {
  switch (m) {
    case ConvergenceMode::FStat: return "f_stat";
    case ConvergenceMode::FLambdaStat: return "f_lambda_stat";
    case ConvergenceMode::StrongLambdaSummable: return "strong_lambda_summable";
    case ConvergenceMode::StrongFLambdaSummable: return "strong_f_lambda_summable";
    case ConvergenceMode::FLambdaCauchy: return "f_lambda_stat_cauchy";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Holds: return "Holds";
    case Status::Fails: return "Fails";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::vector<double> default_xi_list() { return ClassifierOptions{}.xi; }

double ConvergenceReport::worst_tail_ratio() const {
  double w = summability ? summability->tail_max : 0.0;
  for (const auto& p : per_xi) w = std::max(w, p.profile.tail_max);
  return w;
}

Status status_of(const DensityProfile& p) {
  switch (p.verdict) {
    case Verdict::Zero: return Status::Holds;
    case Verdict::One:
    case Verdict::Value: return Status::Fails;
    case Verdict::Inconclusive: break;
  }
  return p.tail_min >= p.tolerance ? Status::Fails : Status::Inconclusive;
}

IndexSet exceedance_set(const SequencePrefix& x, double limit, double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw UsageError("exceedance level must be positive, got " + format_double(xi));
  }
  return IndexSet::from_predicate(
      [&](std::size_t t) { return std::abs(x.at(t) - limit) >= xi; }, x.size());
}

namespace {

void check_xi_list(const std::vector<double>& xi) {
  if (xi.empty()) throw UsageError("xi list is empty");
  for (double v : xi) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw UsageError("xi values must be positive, got " + format_double(v));
    }
  }
}

Status combine(const std::vector<XiProfile>& per_xi) {
  bool all_hold = true;
  for (const auto& p : per_xi) {
    if (p.status == Status::Fails) return Status::Fails;
    all_hold = all_hold && p.status == Status::Holds;
  }
  return all_hold ? Status::Holds : Status::Inconclusive;
}

ConvergenceReport stat_report(ConvergenceMode mode, const SequencePrefix& x, double limit,
                              const Modulus& m, const WindowSchedule& w,
                              const ClassifierOptions& opts) {
  require_unbounded(m, to_string(mode));
  check_xi_list(opts.xi);
  if (x.size() < 100) throw UsageError("classifiers need a prefix of at least 100 terms");
  ConvergenceReport r;
  r.mode = mode;
  r.limit = limit;
  for (double xi : opts.xi) {
    XiProfile p;
    p.xi = xi;
    p.profile = density_profile(exceedance_set(x, limit, xi), m, w, opts.density);
    p.status = status_of(p.profile);
    r.per_xi.push_back(std::move(p));
  }
  r.status = combine(r.per_xi);
  return r;
}

// Windowed sums of f(|x_t - L|) normalized by f(length_n), via long double prefix sums.
DensityProfile summability_profile(const SequencePrefix& x, double limit, const Modulus& m,
                                   const WindowSchedule& w, const DensityOptions& opts) {
  const std::size_t n_max = w.horizon();
  std::vector<long double> prefix(n_max + 1, 0.0L);
  for (std::size_t t = 1; t <= n_max; ++t) {
    prefix[t] = prefix[t - 1] + static_cast<long double>(m(std::abs(x.at(t) - limit)));
  }
  ProfileBuilder b(n_max, opts);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const long double sum = prefix[n] - prefix[w.start(n) - 1];
    b.push(n, static_cast<double>(sum / static_cast<long double>(m(w.length(n)))));
  }
  return std::move(b).finish();
}

ConvergenceReport summability_report(ConvergenceMode mode, const SequencePrefix& x,
                                     double limit, const Modulus& m, const WindowSchedule& w,
                                     const ClassifierOptions& opts) {
  if (x.size() < 100) throw UsageError("classifiers need a prefix of at least 100 terms");
  ConvergenceReport r;
  r.mode = mode;
  r.limit = limit;
  r.summability = summability_profile(x, limit, m, w, opts.density);
  r.status = status_of(*r.summability);
  return r;
}

}  // namespace

ConvergenceReport f_lambda_stat_convergent(const SequencePrefix& x, double limit,
                                           const Modulus& m, const LambdaSeq& s,
                                           const ClassifierOptions& opts) {
  return stat_report(ConvergenceMode::FLambdaStat, x, limit, m,
                     WindowSchedule::for_lambda(s, x.size()), opts);
}

ConvergenceReport f_stat_convergent(const SequencePrefix& x, double limit, const Modulus& m,
                                    const ClassifierOptions& opts) {
  return stat_report(ConvergenceMode::FStat, x, limit, m, WindowSchedule::cumulative(x.size()),
                     opts);
}

ConvergenceReport strong_f_lambda_summable(const SequencePrefix& x, double limit,
                                           const Modulus& m, const LambdaSeq& s,
                                           const ClassifierOptions& opts) {
  require_unbounded(m, "strong f_lambda summability");
  return summability_report(ConvergenceMode::StrongFLambdaSummable, x, limit, m,
                            WindowSchedule::for_lambda(s, x.size()), opts);
}

ConvergenceReport strong_lambda_summable(const SequencePrefix& x, double limit,
                                         const LambdaSeq& s, const ClassifierOptions& opts) {
  return summability_report(ConvergenceMode::StrongLambdaSummable, x, limit,
                            Modulus::identity(), WindowSchedule::for_lambda(s, x.size()), opts);
}

DensityProfile cumulative_lambda_average(const SequencePrefix& x, double limit,
                                         const LambdaSeq& s, const DensityOptions& opts) {
  const std::size_t n_max = x.size();
  ProfileBuilder b(n_max, opts);
  long double sum = 0.0L;
  for (std::size_t n = 1; n <= n_max; ++n) {
    sum += std::abs(x.at(n) - limit);
    b.push(n, static_cast<double>(sum / static_cast<long double>(s.at(n))));
  }
  return std::move(b).finish();
}

namespace {

long long bin_of(double v, double width) {
  return static_cast<long long>(std::floor(v / width));
}

}  // namespace

CauchyResult f_lambda_stat_cauchy(const SequencePrefix& x, const Modulus& m,
                                  const LambdaSeq& s, double xi, const ClassifierOptions& opts,
                                  std::size_t candidate_count) {
  require_unbounded(m, "statistical Cauchy test");
  if (candidate_count == 0) throw UsageError("Cauchy search needs at least one candidate");
  if (!(xi > 0.0)) throw UsageError("Cauchy level must be positive");
  if (x.size() < 100) throw UsageError("classifiers need a prefix of at least 100 terms");

  // Candidates: indices whose values sit nearest the centre of the modal bin.
  std::map<long long, std::size_t> hist;
  for (double v : x.values()) ++hist[bin_of(v, xi)];
  auto mode = std::max_element(hist.begin(), hist.end(), [](const auto& a, const auto& b) {
    return a.second < b.second;
  });
  const double centre = (static_cast<double>(mode->first) + 0.5) * xi;
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(x.at(a) - centre) < std::abs(x.at(b) - centre);
  });
  order.resize(std::min(candidate_count, order.size()));

  const auto schedule = WindowSchedule::for_lambda(s, x.size());
  CauchyResult r;
  r.candidates = order;
  r.best_tail_max = std::numeric_limits<double>::infinity();
  bool any_inconclusive = false;
  for (std::size_t q : order) {
    const double anchor = x.at(q);
    const auto set = IndexSet::from_predicate(
        [&](std::size_t t) { return std::abs(x.at(t) - anchor) >= xi; }, x.size());
    const auto profile = density_profile(set, m, schedule, opts.density);
    r.best_tail_max = std::min(r.best_tail_max, profile.tail_max);
    const Status st = status_of(profile);
    if (st == Status::Holds) {
      r.status = Status::Holds;
      r.witness_q = q;
      return r;
    }
    any_inconclusive = any_inconclusive || st == Status::Inconclusive;
  }
  r.status = any_inconclusive ? Status::Inconclusive : Status::Fails;
  return r;
}

CauchyReport f_lambda_stat_cauchy_all(const SequencePrefix& x, const Modulus& m,
                                      const LambdaSeq& s, const ClassifierOptions& opts,
                                      std::size_t candidate_count) {
  check_xi_list(opts.xi);
  CauchyReport rep;
  rep.status = Status::Holds;
  for (double xi : opts.xi) {
    auto r = f_lambda_stat_cauchy(x, m, s, xi, opts, candidate_count);
    if (r.status == Status::Fails) rep.status = Status::Fails;
    if (r.status == Status::Inconclusive && rep.status == Status::Holds) {
      rep.status = Status::Inconclusive;
    }
    rep.per_xi.emplace_back(xi, std::move(r));
    if (rep.status == Status::Fails) break;
  }
  return rep;
}

std::optional<double> estimate_stat_limit(const SequencePrefix& x, const Modulus& m,
                                          const LambdaSeq& s, double xi,
                                          const DensityOptions& opts) {
  require_unbounded(m, "statistical limit estimate");
  if (x.size() < 100) throw UsageError("limit estimate needs a prefix of at least 100 terms");
  if (!(xi > 0.0)) throw UsageError("histogram bin width must be positive");

  std::map<long long, std::vector<double>> bins;
  for (std::size_t t = x.size() / 2 + 1; t <= x.size(); ++t) {
    bins[bin_of(x.at(t), xi)].push_back(x.at(t));
  }
  std::vector<std::pair<long long, std::vector<double>*>> ranked;
  for (auto& [k, v] : bins) ranked.emplace_back(k, &v);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second->size() > b.second->size();
  });

  const auto schedule = WindowSchedule::for_lambda(s, x.size());
  constexpr std::size_t kMaxBins = 8;
  for (std::size_t i = 0; i < ranked.size() && i < kMaxBins; ++i) {
    auto& vals = *ranked[i].second;
    const auto mid = vals.begin() + static_cast<std::ptrdiff_t>((vals.size() - 1) / 2);
    std::nth_element(vals.begin(), mid, vals.end());
    const double candidate = *mid;
    const auto profile =
        density_profile(exceedance_set(x, candidate, xi), m, schedule, opts);
    if (profile.verdict == Verdict::Zero) return candidate;
  }
  return std::nullopt;
}

}  // namespace modstat
