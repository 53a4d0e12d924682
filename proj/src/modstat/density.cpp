#include "modstat/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modstat/error.hpp"
#include "modstat/text.hpp"

namespace modstat {

IndexSet IndexSet::from_list(const std::vector<std::size_t>& indices, std::size_t horizon) {
  IndexSet s;
  s.bits_.assign(horizon, false);
  for (std::size_t t : indices) {
    if (t < 1 || t > horizon) {
      throw UsageError("index " + std::to_string(t) + " outside [1, " +
                       std::to_string(horizon) + "]");
    }
    if (!s.bits_[t - 1]) {
      s.bits_[t - 1] = true;
      ++s.size_;
    }
  }
  return s;
}

IndexSet IndexSet::from_predicate(const std::function<bool(std::size_t)>& pred,
                                  std::size_t horizon) {
  IndexSet s;
  s.bits_.assign(horizon, false);
  if (!pred) return s;
  for (std::size_t t = 1; t <= horizon; ++t) {
    if (pred(t)) {
      s.bits_[t - 1] = true;
      ++s.size_;
    }
  }
  return s;
}

IndexSet IndexSet::all(std::size_t horizon) {
  IndexSet s;
  s.bits_.assign(horizon, true);
  s.size_ = horizon;
  return s;
}

std::vector<std::size_t> IndexSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(size_);
  for (std::size_t t = 1; t <= horizon(); ++t) {
    if (bits_[t - 1]) out.push_back(t);
  }
  return out;
}

IndexSet IndexSet::complement() const {
  IndexSet c;
  c.bits_ = bits_;
  c.bits_.flip();
  c.size_ = horizon() - size_;
  return c;
}

IndexSet squares_set(std::size_t horizon) {
  std::vector<std::size_t> v;
  for (std::size_t k = 1; k * k <= horizon; ++k) v.push_back(k * k);
  return IndexSet::from_list(v, horizon);
}

IndexSet powers_of_two_set(std::size_t horizon) {
  std::vector<std::size_t> v;
  for (std::size_t p = 1; p <= horizon; p *= 2) v.push_back(p);
  return IndexSet::from_list(v, horizon);
}

IndexSet evens_set(std::size_t horizon) {
  return IndexSet::from_predicate([](std::size_t t) { return t % 2 == 0; }, horizon);
}

IndexSet block_set(std::size_t period, std::size_t width, std::size_t horizon) {
  if (period == 0) throw UsageError("block period must be positive");
  return IndexSet::from_predicate(
      [=](std::size_t t) { return (t - 1) % period < width; }, horizon);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Zero: return "Zero";
    case Verdict::One: return "One";
    case Verdict::Value: return "Value";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::size_t resolve_tail_window(std::size_t horizon, const DensityOptions& opts) {
  std::size_t w = opts.tail_window;
  if (w == 0) w = std::max<std::size_t>(10, (horizon + 9) / 10);
  return std::min(w, horizon);
}

bool keep_sample(std::size_t n, std::size_t horizon) {
  if (n <= 10000 || n == horizon) return true;
  const std::size_t step = (n + 9999) / 10000;
  return n % step == 0;
}

Verdict classify_tail(double tail_min, double tail_max, double tau, double* value) {
  Verdict v = Verdict::Inconclusive;
  double at = 0.0;
  if (tail_max < tau) {
    v = Verdict::Zero;
  } else if (tail_min > 1.0 - tau) {
    v = Verdict::One;
    at = 1.0;
  } else if (tail_max - tail_min < tau) {
    v = Verdict::Value;
    at = 0.5 * (tail_min + tail_max);
  }
  if (value) *value = at;
  return v;
}

ProfileBuilder::ProfileBuilder(std::size_t horizon, const DensityOptions& opts) {
  if (!(opts.tau > 0.0 && opts.tau < 1.0)) {
    throw UsageError("density tolerance must lie in (0, 1), got " + format_double(opts.tau));
  }
  p_.horizon = horizon;
  p_.tolerance = opts.tau;
  p_.tail_window = resolve_tail_window(horizon, opts);
  p_.tail_min = std::numeric_limits<double>::infinity();
  p_.tail_max = -std::numeric_limits<double>::infinity();
  tail_from_ = horizon - p_.tail_window + 1;
}

void ProfileBuilder::push(std::size_t n, double ratio) {
  if (keep_sample(n, p_.horizon)) p_.samples.push_back({n, ratio});
  if (n >= tail_from_) {
    p_.tail_min = std::min(p_.tail_min, ratio);
    p_.tail_max = std::max(p_.tail_max, ratio);
  }
  p_.last_ratio = ratio;
}

DensityProfile ProfileBuilder::finish() && {
  p_.verdict = classify_tail(p_.tail_min, p_.tail_max, p_.tolerance, &p_.value);
  return std::move(p_);
}

std::vector<std::size_t> windowed_counts(const IndexSet& a, const WindowSchedule& w) {
  const std::size_t horizon = w.horizon();
  if (a.horizon() < horizon) throw UsageError("index set is shorter than the schedule");
  std::vector<std::size_t> counts(horizon);
  std::size_t lo = 1;  // current window is [lo, n]
  std::size_t count = 0;
  for (std::size_t n = 1; n <= horizon; ++n) {
    if (a.contains(n)) ++count;
    const std::size_t start = w.start(n);
    for (; lo < start; ++lo) {
      if (a.contains(lo)) --count;
    }
    while (lo > start) {
      --lo;
      if (a.contains(lo)) ++count;
    }
    counts[n - 1] = count;
  }
  return counts;
}

DensityProfile density_profile(const IndexSet& a, const Modulus& m, const WindowSchedule& w,
                               const DensityOptions& opts) {
  const auto counts = windowed_counts(a, w);
  ProfileBuilder b(w.horizon(), opts);
  for (std::size_t n = 1; n <= w.horizon(); ++n) {
    const double den = m(w.length(n));
    if (!(den > 0.0)) throw DomainError("f(lambda_n) vanishes at n = " + std::to_string(n));
    b.push(n, m(static_cast<double>(counts[n - 1])) / den);
  }
  return std::move(b).finish();
}

namespace {

void check_density_inputs(const IndexSet& a, const Modulus& m, std::size_t horizon) {
  require_unbounded(m, "moduli density");
  if (horizon < 100) throw UsageError("density horizon must be >= 100");
  if (a.horizon() < horizon) {
    throw UsageError("index set covers " + std::to_string(a.horizon()) +
                     " indices, horizon is " + std::to_string(horizon));
  }
}

}  // namespace

DensityProfile f_density(const IndexSet& a, const Modulus& m, std::size_t horizon,
                         const DensityOptions& opts) {
  check_density_inputs(a, m, horizon);
  return density_profile(a, m, WindowSchedule::cumulative(horizon), opts);
}

DensityProfile f_lambda_density(const IndexSet& a, const Modulus& m, const LambdaSeq& s,
                                std::size_t horizon, const DensityOptions& opts) {
  check_density_inputs(a, m, horizon);
  return density_profile(a, m, WindowSchedule::for_lambda(s, horizon), opts);
}

DensityProfile natural_density(const IndexSet& a, std::size_t horizon,
                               const DensityOptions& opts) {
  return f_density(a, Modulus::identity(), horizon, opts);
}

ComplementCheck complement_check(const IndexSet& a, const Modulus& m, std::size_t horizon,
                                 const DensityOptions& opts) {
  ComplementCheck c;
  c.a_profile = f_density(a, m, horizon, opts);
  if (c.a_profile.verdict != Verdict::Zero) {
    throw UsageError(std::string("complement check needs f-density zero; verdict found: ") +
                     to_string(c.a_profile.verdict) + " (tail max " +
                     format_double(c.a_profile.tail_max) + ")");
  }
  const IndexSet comp = a.complement();
  c.complement_profile = f_density(comp, m, horizon, opts);

  std::size_t in_a = 0;
  for (std::size_t n = 1; n <= horizon && c.sandwich_holds; ++n) {
    if (a.contains(n)) ++in_a;
    const double fn = m(static_cast<double>(n));
    const double ra = m(static_cast<double>(in_a)) / fn;
    const double rc = m(static_cast<double>(n - in_a)) / fn;
    if (ra + rc < 1.0 - 1e-12 || ra + rc > ra + 1.0 + 1e-9) {
      c.sandwich_holds = false;
      c.sandwich_violation = n;
    }
  }
  c.relation_holds = c.complement_profile.verdict == Verdict::One && c.sandwich_holds;
  return c;
}

}  // namespace modstat
