#include "modstat/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "modstat/error.hpp"
#include "modstat/text.hpp"

namespace modstat {

namespace {

// Ratios f(|E ∩ I_n|) / f(lambda_n), n = 1..horizon.
std::vector<double> ratio_curve(const IndexSet& e, const Modulus& m, const WindowSchedule& w) {
  const auto counts = windowed_counts(e, w);
  std::vector<double> r(w.horizon());
  for (std::size_t n = 1; n <= w.horizon(); ++n) {
    r[n - 1] = m(static_cast<double>(counts[n - 1])) / m(w.length(n));
  }
  return r;
}

}  // namespace

Thresholds thresholds(const SequencePrefix& x, double limit, const Modulus& m,
                      const LambdaSeq& s, const ThresholdOptions& opts) {
  require_unbounded(m, "threshold construction");
  if (opts.d_max < 1) throw UsageError("d_max must be >= 1");
  if (opts.require_holds) {
    const auto rep = f_lambda_stat_convergent(x, limit, m, s, opts.classifier);
    if (!rep.holds()) {
      throw PreconditionFailed("sequence is not f_lambda-statistically convergent to " +
                               format_double(limit) + " (verdict " + to_string(rep.status) +
                               ")");
    }
  }

  const std::size_t horizon = x.size();
  const auto w = WindowSchedule::for_lambda(s, horizon);
  Thresholds th;
  th.levels.push_back(0);
  for (std::size_t d = 1; d <= opts.d_max; ++d) {
    const double level = 1.0 / static_cast<double>(d);
    const auto r = ratio_curve(exceedance_set(x, limit, level), m, w);
    std::size_t last_bad = 0;
    for (std::size_t n = horizon; n >= 1; --n) {
      if (r[n - 1] >= level) {
        last_bad = n;
        break;
      }
    }
    const std::size_t nd = std::max(last_bad, th.levels.back() + 1);
    if (nd >= horizon) {
      th.truncated = true;
      th.failed_level = d;
      break;
    }
    th.levels.push_back(nd);
  }
  if (th.levels.size() == 1) {
    throw ConstructionFailed("no threshold N_1 exists within the horizon of " +
                             std::to_string(horizon));
  }
  return th;
}

IndexSet Decomposition::support() const {
  return IndexSet::from_predicate([&](std::size_t t) { return z[t - 1] != 0.0; }, z.size());
}

Decomposition decompose(const SequencePrefix& x, double limit, const Thresholds& th) {
  if (th.levels.size() < 2 || th.levels.front() != 0) {
    throw UsageError("decomposition needs thresholds N_0 = 0 < N_1 < ...");
  }
  Decomposition dec;
  dec.thresholds = th;
  dec.limit = limit;
  dec.y.resize(x.size());
  dec.z.assign(x.size(), 0.0);

  const auto& lv = th.levels;
  std::size_t d = 0;  // stage: N_d < t <= N_{d+1}; stage 0 keeps x untouched
  for (std::size_t t = 1; t <= x.size(); ++t) {
    while (d + 1 < lv.size() && t > lv[d + 1]) ++d;
    const double xt = x.at(t);
    if (d == 0 || std::abs(xt - limit) < 1.0 / static_cast<double>(d)) {
      dec.y[t - 1] = xt;
    } else {
      dec.y[t - 1] = limit;
      dec.z[t - 1] = xt - limit;
    }
  }
  return dec;
}

DecompositionVerification verify_decomposition(const SequencePrefix& x,
                                               const Decomposition& dec, const Modulus& m,
                                               const LambdaSeq& s, const DensityOptions& opts) {
  if (dec.y.size() != x.size() || dec.z.size() != x.size()) {
    throw UsageError("decomposition length does not match the sequence");
  }
  DecompositionVerification v;
  const std::size_t n_max = x.size();
  const double limit = dec.limit;

  for (std::size_t t = 1; t <= n_max; ++t) {
    v.max_reconstruction_error = std::max(
        v.max_reconstruction_error, std::abs(x.at(t) - (dec.y[t - 1] + dec.z[t - 1])));
  }
  v.reconstruction = v.max_reconstruction_error < 1e-12;
  if (!v.reconstruction) {
    v.failures.push_back("reconstruction error " + format_double(v.max_reconstruction_error));
  }

  // suffix[t] = sup_{u >= t} |y_u - L|
  std::vector<double> suffix(n_max + 2, 0.0);
  for (std::size_t t = n_max; t >= 1; --t) {
    suffix[t] = std::max(suffix[t + 1], std::abs(dec.y[t - 1] - limit));
  }
  v.y_converges = true;
  const auto& lv = dec.thresholds.levels;
  for (std::size_t d = 1; d < lv.size(); ++d) {
    const double level = 1.0 / static_cast<double>(d);
    const double sup = lv[d] < n_max ? suffix[lv[d] + 1] : 0.0;
    if (sup >= level) {
      v.y_converges = false;
      v.convergence_failed_level = d;
      v.convergence_excess = sup;
      v.failures.push_back("sup |y_t - L| beyond N_" + std::to_string(d) + " is " +
                           format_double(sup));
      break;
    }
  }

  v.support_profile = f_lambda_density(dec.support(), m, s, n_max, opts);
  v.support_null = v.support_profile.verdict == Verdict::Zero;
  if (!v.support_null) {
    v.failures.push_back(std::string("support of z has f_lambda-density verdict ") +
                         to_string(v.support_profile.verdict));
  }

  v.bound = x.bounded_hint().value_or(x.sup_abs()) + std::abs(limit);
  double worst = 0.0;
  for (std::size_t i = 0; i < n_max; ++i) {
    worst = std::max({worst, std::abs(dec.y[i]), std::abs(dec.z[i])});
  }
  v.bounded = worst <= v.bound + 1e-12;
  if (!v.bounded) {
    v.failures.push_back("component magnitude " + format_double(worst) + " exceeds bound " +
                         format_double(v.bound));
  }
  return v;
}

ExceptionalSet exceptional_set(const SequencePrefix& x, double limit, const Modulus& m,
                               const LambdaSeq& s, std::size_t z_max,
                               const DensityOptions& opts) {
  require_unbounded(m, "exceptional set construction");
  if (z_max < 1) throw UsageError("z_max must be >= 1");
  const std::size_t horizon = x.size();
  const auto w = WindowSchedule::for_lambda(s, horizon);

  ExceptionalSet es;
  for (std::size_t z = 1; z <= z_max; ++z) {
    const double level = 1.0 / static_cast<double>(z);
    auto vz = IndexSet::from_predicate(
        [&](std::size_t t) { return std::abs(x.at(t) - limit) > level; }, horizon);
    const auto r = ratio_curve(vz, m, w);
    std::size_t raw = 1;
    for (std::size_t n = horizon; n >= 1; --n) {
      if (r[n - 1] > level) {
        raw = n + 1;
        break;
      }
    }
    const std::size_t iz = es.anchors.empty() ? raw : std::max(raw, es.anchors.back() + 1);
    if (iz > horizon) {
      throw ConstructionFailed("no anchor i_z within the horizon for z = " +
                               std::to_string(z));
    }
    es.anchors.push_back(iz);
    es.stage_sets.push_back(std::move(vz));
  }

  std::vector<std::size_t> members;
  for (std::size_t z = 0; z < z_max; ++z) {
    const std::size_t lo = es.anchors[z];
    const std::size_t hi = z + 1 < z_max ? es.anchors[z + 1] : horizon + 1;
    for (std::size_t t = lo; t < hi; ++t) {
      if (es.stage_sets[z].contains(t)) members.push_back(t);
    }
  }
  es.t = IndexSet::from_list(members, horizon);
  es.density_profile = f_lambda_density(es.t, m, s, horizon, opts);
  return es;
}

OffTVerification verify_off_t_convergence(const SequencePrefix& x, double limit,
                                          const ExceptionalSet& es) {
  OffTVerification v;
  for (std::size_t z = 1; z <= es.anchors.size(); ++z) {
    const double level = 1.0 / static_cast<double>(z);
    for (std::size_t t = es.anchors[z - 1]; t <= x.size(); ++t) {
      if (es.t.contains(t)) continue;
      const double dev = std::abs(x.at(t) - limit);
      if (dev > level) {
        return {false, t, z, dev};
      }
    }
  }
  return v;
}

}  // namespace modstat
