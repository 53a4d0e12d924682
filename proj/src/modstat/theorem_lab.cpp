#include "modstat/theorem_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "modstat/error.hpp"
#include "modstat/report.hpp"

namespace modstat {

const char* to_string(TheoremId id) {
  switch (id) {
    case TheoremId::T1: return "T1";
    case TheoremId::T1_converse: return "T1_converse";
    case TheoremId::C1_unique: return "C1_unique";
    case TheoremId::C1_linear: return "C1_linear";
    case TheoremId::T2: return "T2";
    case TheoremId::T3: return "T3";
    case TheoremId::D1_C2: return "D1_C2";
    case TheoremId::T5: return "T5";
    case TheoremId::T7: return "T7";
    case TheoremId::T8: return "T8";
    case TheoremId::T9_1: return "T9_1";
    case TheoremId::T9_2: return "T9_2";
    case TheoremId::C4: return "C4";
    case TheoremId::T10: return "T10";
  }
  return "?";
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Supported: return "Supported";
    case Outcome::HypothesisNotMet: return "HypothesisNotMet";
    case Outcome::Violated: return "Violated";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

double tail_median(const SequencePrefix& x) {
  std::vector<double> tail(x.values().begin() + static_cast<std::ptrdiff_t>(x.size() / 2),
                           x.values().end());
  auto mid = tail.begin() + static_cast<std::ptrdiff_t>((tail.size() - 1) / 2);
  std::nth_element(tail.begin(), mid, tail.end());
  return *mid;
}

double min_xi(const ClassifierOptions& o) {
  return *std::min_element(o.xi.begin(), o.xi.end());
}

ClassifierOptions scaled(ClassifierOptions o, double factor) {
  for (double& v : o.xi) v *= factor;
  return o;
}

Json status_json(Status s) { return Json(to_string(s)); }

// Fills outcome/vacuous and, for skipped conclusions, a note.
void settle(TheoremCheck& c, Status antecedent, Status conclusion) {
  c.outcome = implication_outcome(c.hypothesis_met, antecedent, conclusion, &c.vacuous);
}

TheoremCheck make(TheoremId id, bool met, Json hypothesis, Json recipe) {
  TheoremCheck c;
  c.id = id;
  c.hypothesis_met = met;
  c.hypothesis = std::move(hypothesis);
  c.hypothesis["met"] = met;
  c.recipe = std::move(recipe);
  return c;
}

// Antecedent Holds is the only case where the conclusion matters.
bool needs_conclusion(const TheoremCheck& c, Status antecedent) {
  return c.hypothesis_met && antecedent == Status::Holds;
}

void require_dominated(const LambdaSeq& lambda, const LambdaSeq& mu, std::size_t horizon) {
  if (auto n = domination_violation(lambda, mu, horizon)) {
    throw UsageError("lambda_n > mu_n at n = " + std::to_string(*n) + " (" + lambda.name() +
                     " vs " + mu.name() + ")");
  }
}

}  // namespace

Outcome implication_outcome(bool hypothesis_met, Status antecedent, Status conclusion,
                            bool* vacuous) {
  if (vacuous) *vacuous = false;
  if (!hypothesis_met) return Outcome::HypothesisNotMet;
  switch (antecedent) {
    case Status::Fails:
      if (vacuous) *vacuous = true;
      return Outcome::Supported;
    case Status::Inconclusive: return Outcome::Inconclusive;
    case Status::Holds: break;
  }
  switch (conclusion) {
    case Status::Holds: return Outcome::Supported;
    case Status::Fails: return Outcome::Violated;
    case Status::Inconclusive: break;
  }
  return Outcome::Inconclusive;
}

Subject Subject::from(SequencePrefix x, std::string label, const Modulus& m,
                      const LambdaSeq& s, const ClassifierOptions& opts) {
  Subject sub{std::move(x), 0.0, std::move(label), std::nullopt};
  if (auto k = sub.x.known_limit()) {
    sub.limit = *k;
  } else if (auto e = estimate_stat_limit(sub.x, m, s, min_xi(opts), opts.density)) {
    sub.limit = *e;
  } else {
    sub.limit = tail_median(sub.x);
  }
  return sub;
}

LabContext::LabContext(const Subject& subject, Modulus m, LabOptions opts)
    : subject_(subject), m_(std::move(m)), opts_(std::move(opts)) {
  require_unbounded(m_, "theorem checks");
  if (opts_.classifier.xi.empty()) throw UsageError("xi list is empty");
}

const ConvergenceReport& LabContext::f_lambda_stat(const LambdaSeq& s) {
  auto it = stat_.find(s.name());
  if (it == stat_.end()) {
    it = stat_.emplace(s.name(), f_lambda_stat_convergent(subject_.x, subject_.limit, m_, s,
                                                          opts_.classifier))
             .first;
  }
  return it->second;
}

const ConvergenceReport& LabContext::f_stat() {
  if (!f_stat_) f_stat_ = f_stat_convergent(subject_.x, subject_.limit, m_, opts_.classifier);
  return *f_stat_;
}

const ConvergenceReport& LabContext::strong_f_lambda(const LambdaSeq& s) {
  auto it = strong_f_.find(s.name());
  if (it == strong_f_.end()) {
    it = strong_f_.emplace(s.name(), strong_f_lambda_summable(subject_.x, subject_.limit, m_, s,
                                                              opts_.classifier))
             .first;
  }
  return it->second;
}

const ConvergenceReport& LabContext::strong_lambda(const LambdaSeq& s) {
  auto it = strong_.find(s.name());
  if (it == strong_.end()) {
    it = strong_.emplace(s.name(),
                         strong_lambda_summable(subject_.x, subject_.limit, s, opts_.classifier))
             .first;
  }
  return it->second;
}

const CauchyReport& LabContext::cauchy(const LambdaSeq& s) {
  auto it = cauchy_.find(s.name());
  if (it == cauchy_.end()) {
    it = cauchy_.emplace(s.name(), f_lambda_stat_cauchy_all(subject_.x, m_, s, opts_.classifier,
                                                            opts_.candidate_count))
             .first;
  }
  return it->second;
}

const MaddoxEstimate& LabContext::maddox() {
  if (!maddox_) maddox_ = maddox_constant(m_);
  return *maddox_;
}

const LimitRatio& LabContext::limit_ratio() {
  if (!limit_ratio_) limit_ratio_ = limit_ratio_f_over_u(m_);
  return *limit_ratio_;
}

Json LabContext::recipe(const std::string& lambda, const std::optional<std::string>& mu) const {
  Json r;
  r["sequence"] = subject_.label;
  r["spec"] = subject_.spec ? *subject_.spec : Json(nullptr);
  r["limit"] = subject_.limit;
  r["modulus"] = m_.name();
  r["lambda"] = lambda;
  r["mu"] = mu ? Json(*mu) : Json(nullptr);
  r["xi"] = opts_.classifier.xi;
  r["tau"] = opts_.classifier.density.tau;
  r["tail_window"] = opts_.classifier.density.tail_window;
  r["horizon"] = subject_.x.size();
  return r;
}

std::array<TheoremCheck, 2> check_t1(LabContext& ctx, const LambdaSeq& s) {
  const auto& md = ctx.maddox();
  const auto& lr = ctx.limit_ratio();
  const bool met = md.constant.has_value() && lr.positive;
  Json hyp{{"maddox", to_json(md)}, {"limit_ratio", to_json(lr)}};

  auto fwd = make(TheoremId::T1, met, hyp, ctx.recipe(s.name()));
  auto conv = make(TheoremId::T1_converse, met && ctx.subject().x.bounded_hint().has_value(),
                   hyp, ctx.recipe(s.name()));
  conv.hypothesis["bounded_hint"] = ctx.subject().x.bounded_hint()
                                        ? Json(*ctx.subject().x.bounded_hint())
                                        : Json(nullptr);
  if (!met) {
    settle(fwd, Status::Inconclusive, Status::Inconclusive);
    settle(conv, Status::Inconclusive, Status::Inconclusive);
    return {fwd, conv};
  }
  const auto& strong = ctx.strong_lambda(s);
  const auto& stat = ctx.f_lambda_stat(s);
  const Json strong_j = to_json(strong, false);
  const Json stat_j = to_json(stat, false);
  // The t = 1..n average is logged next to the windowed one, never asserted.
  const auto cumulative = cumulative_lambda_average(ctx.subject().x, ctx.subject().limit, s,
                                                    ctx.options().classifier.density);

  fwd.conclusion = {{"antecedent", strong_j},
                    {"conclusion", stat_j},
                    {"cumulative_average", to_json(cumulative, false)}};
  settle(fwd, strong.status, stat.status);
  conv.conclusion = {{"antecedent", stat_j}, {"conclusion", strong_j}};
  settle(conv, stat.status, strong.status);
  return {fwd, conv};
}

TheoremCheck check_t2(LabContext& ctx, const LambdaSeq& s) {
  const auto& md = ctx.maddox();
  const auto& lr = ctx.limit_ratio();
  auto c = make(TheoremId::T2, md.constant.has_value() && lr.positive,
                {{"maddox", to_json(md)}, {"limit_ratio", to_json(lr)}}, ctx.recipe(s.name()));
  c.recipe["d_max"] = ctx.options().d_max;
  if (!c.hypothesis_met) {
    settle(c, Status::Inconclusive, Status::Inconclusive);
    return c;
  }
  const auto& stat = ctx.f_lambda_stat(s);
  c.conclusion["antecedent"] = to_json(stat, false);
  Status concl = Status::Inconclusive;
  if (needs_conclusion(c, stat.status)) {
    ThresholdOptions to;
    to.classifier = ctx.options().classifier;
    to.d_max = ctx.options().d_max;
    to.require_holds = false;  // already established above
    try {
      const auto& x = ctx.subject().x;
      const auto th = thresholds(x, ctx.subject().limit, ctx.modulus(), s, to);
      const auto dec = decompose(x, ctx.subject().limit, th);
      const auto v = verify_decomposition(x, dec, ctx.modulus(), s, to.classifier.density);
      c.conclusion["thresholds"] = to_json(th);
      c.conclusion["verification"] = to_json(v, false);
      concl = v.all_passed() ? Status::Holds : Status::Fails;
    } catch (const ConstructionFailed& e) {
      c.conclusion["construction_failed"] = e.what();
    }
  }
  c.conclusion["status"] = status_json(concl);
  settle(c, stat.status, concl);
  return c;
}

TheoremCheck check_t3(LabContext& ctx, const LambdaSeq& s) {
  auto c = make(TheoremId::T3, ctx.modulus().claimed_unbounded(),
                {{"unbounded", ctx.modulus().claimed_unbounded()}}, ctx.recipe(s.name()));
  c.recipe["z_max"] = ctx.options().z_max;
  const auto& stat = ctx.f_lambda_stat(s);
  c.conclusion["antecedent"] = to_json(stat, false);
  Status concl = Status::Inconclusive;
  if (needs_conclusion(c, stat.status)) {
    try {
      const auto& x = ctx.subject().x;
      const auto es = exceptional_set(x, ctx.subject().limit, ctx.modulus(), s,
                                      ctx.options().z_max, ctx.options().classifier.density);
      const auto off = verify_off_t_convergence(x, ctx.subject().limit, es);
      c.conclusion["anchors"] = es.anchors;
      c.conclusion["exceptional_size"] = es.t.size();
      c.conclusion["exceptional_density"] = to_json(es.density_profile, false);
      c.conclusion["off_t"] = to_json(off);
      concl = es.density_profile.verdict == Verdict::Zero && off.passed ? Status::Holds
                                                                         : Status::Fails;
      if (es.density_profile.verdict == Verdict::Inconclusive && off.passed) {
        concl = Status::Inconclusive;
      }
    } catch (const ConstructionFailed& e) {
      c.conclusion["construction_failed"] = e.what();
    }
  }
  c.conclusion["status"] = status_json(concl);
  settle(c, stat.status, concl);
  return c;
}

std::array<TheoremCheck, 2> check_cauchy_equiv(LabContext& ctx, const LambdaSeq& s) {
  const bool met = ctx.modulus().claimed_unbounded();
  const Json hyp{{"unbounded", met}};
  auto d1 = make(TheoremId::D1_C2, met, hyp, ctx.recipe(s.name()));
  auto t5 = make(TheoremId::T5, met, hyp, ctx.recipe(s.name()));
  d1.recipe["candidate_count"] = ctx.options().candidate_count;
  t5.recipe["candidate_count"] = ctx.options().candidate_count;

  const auto& stat = ctx.f_lambda_stat(s);
  const auto& cauchy = ctx.cauchy(s);
  const Json cauchy_j = to_json(cauchy);
  d1.conclusion = {{"antecedent", to_json(stat, false)}, {"conclusion", cauchy_j}};
  settle(d1, stat.status, cauchy.status);

  t5.conclusion["antecedent"] = cauchy_j;
  Status concl = Status::Inconclusive;
  if (needs_conclusion(t5, cauchy.status)) {
    const auto& opts = ctx.options().classifier;
    const auto est = estimate_stat_limit(ctx.subject().x, ctx.modulus(), s, min_xi(opts),
                                         opts.density);
    if (est) {
      const auto rep = f_lambda_stat_convergent(ctx.subject().x, *est, ctx.modulus(), s, opts);
      t5.conclusion["estimated_limit"] = *est;
      t5.conclusion["conclusion"] = to_json(rep, false);
      concl = rep.status;
    } else {
      t5.conclusion["estimated_limit"] = nullptr;
      concl = Status::Fails;
    }
  }
  t5.conclusion["status"] = status_json(concl);
  settle(t5, cauchy.status, concl);
  return {d1, t5};
}

TheoremCheck check_t7(LabContext& ctx, const LambdaSeq& s) {
  const auto r = ratio_n_over_f_lambda(ctx.modulus(), s, ctx.subject().x.size());
  const auto& lr = ctx.limit_ratio();
  auto c = make(TheoremId::T7, r.liminf_positive && lr.positive,
                {{"n_over_f_lambda", to_json(r)}, {"limit_ratio", to_json(lr)}},
                ctx.recipe(s.name()));
  if (!c.hypothesis_met) {
    settle(c, Status::Inconclusive, Status::Inconclusive);
    return c;
  }
  const auto& stat = ctx.f_lambda_stat(s);
  const auto& fs = ctx.f_stat();
  c.conclusion = {{"antecedent", to_json(stat, false)}, {"conclusion", to_json(fs, false)}};
  settle(c, stat.status, fs.status);
  return c;
}

TheoremCheck check_t8(LabContext& ctx, const LambdaSeq& s) {
  const auto r = ratio_n_over_f_lambda(ctx.modulus(), s, ctx.subject().x.size());
  auto c = make(TheoremId::T8, r.lim_is_one, {{"n_over_f_lambda", to_json(r)}},
                ctx.recipe(s.name()));
  if (!c.hypothesis_met) {
    settle(c, Status::Inconclusive, Status::Inconclusive);
    return c;
  }
  const auto& fs = ctx.f_stat();
  const auto& stat = ctx.f_lambda_stat(s);
  c.conclusion = {{"antecedent", to_json(fs, false)}, {"conclusion", to_json(stat, false)}};
  settle(c, fs.status, stat.status);
  return c;
}

std::array<TheoremCheck, 2> check_t9(LabContext& ctx, const LambdaSeq& lambda,
                                     const LambdaSeq& mu) {
  const std::size_t h = ctx.subject().x.size();
  require_dominated(lambda, mu, h);
  const auto lim = ratio_liminf(lambda, mu, h);
  const bool to_one = ratio_tends_to_one(lambda, mu, h);

  auto p1 = make(TheoremId::T9_1, lim.hypothesis_met, {{"lambda_over_mu", to_json(lim)}},
                 ctx.recipe(lambda.name(), mu.name()));
  auto p2 = make(TheoremId::T9_2, to_one, {{"mu_over_lambda_tends_to_one", to_one}},
                 ctx.recipe(lambda.name(), mu.name()));
  if (p1.hypothesis_met) {
    const auto& under_mu = ctx.f_lambda_stat(mu);
    const auto& under_lambda = ctx.f_lambda_stat(lambda);
    p1.conclusion = {{"antecedent", to_json(under_mu, false)},
                     {"conclusion", to_json(under_lambda, false)}};
    settle(p1, under_mu.status, under_lambda.status);
  } else {
    settle(p1, Status::Inconclusive, Status::Inconclusive);
  }
  if (p2.hypothesis_met) {
    const auto& under_lambda = ctx.f_lambda_stat(lambda);
    const auto& under_mu = ctx.f_lambda_stat(mu);
    p2.conclusion = {{"antecedent", to_json(under_lambda, false)},
                     {"conclusion", to_json(under_mu, false)}};
    settle(p2, under_lambda.status, under_mu.status);
  } else {
    settle(p2, Status::Inconclusive, Status::Inconclusive);
  }
  return {p1, p2};
}

std::array<TheoremCheck, 2> check_t10_c4(LabContext& ctx, const LambdaSeq& lambda,
                                         const LambdaSeq& mu) {
  const std::size_t h = ctx.subject().x.size();
  require_dominated(lambda, mu, h);
  const auto lim = ratio_liminf(lambda, mu, h);
  const auto& md = ctx.maddox();

  auto t10 = make(TheoremId::T10, lim.hypothesis_met && md.constant.has_value(),
                  {{"lambda_over_mu", to_json(lim)}, {"maddox", to_json(md)}},
                  ctx.recipe(lambda.name(), mu.name()));
  auto c4 = make(TheoremId::C4, lim.hypothesis_met, {{"lambda_over_mu", to_json(lim)}},
                 ctx.recipe(lambda.name(), mu.name()));
  if (!lim.hypothesis_met) {
    settle(t10, Status::Inconclusive, Status::Inconclusive);
    settle(c4, Status::Inconclusive, Status::Inconclusive);
    return {t10, c4};
  }
  const auto& summ_mu = ctx.strong_f_lambda(mu);
  const Json summ_mu_j = to_json(summ_mu, false);
  if (t10.hypothesis_met) {
    const auto& stat = ctx.f_lambda_stat(lambda);
    t10.conclusion = {{"antecedent", summ_mu_j}, {"conclusion", to_json(stat, false)}};
    settle(t10, summ_mu.status, stat.status);
  } else {
    settle(t10, Status::Inconclusive, Status::Inconclusive);
  }
  const auto& summ_lambda = ctx.strong_f_lambda(lambda);
  c4.conclusion = {{"antecedent", summ_mu_j}, {"conclusion", to_json(summ_lambda, false)}};
  settle(c4, summ_mu.status, summ_lambda.status);
  return {t10, c4};
}

std::array<TheoremCheck, 2> check_c1(LabContext& ctx, const Subject& other, const LambdaSeq& s,
                                     double alpha) {
  const auto& x = ctx.subject().x;
  if (other.x.size() != x.size()) {
    throw UsageError("linearity check needs sequences of equal length");
  }
  if (!std::isfinite(alpha)) throw UsageError("alpha must be finite");
  const auto& m = ctx.modulus();
  const auto& opts = ctx.options().classifier;
  const double lx = ctx.subject().limit;
  const double ly = other.limit;
  const double xi0 = min_xi(opts);
  const bool met = m.claimed_unbounded();

  // Uniqueness: no second limit, under this modulus or any library modulus.
  auto uniq = make(TheoremId::C1_unique, met, {{"unbounded", met}}, ctx.recipe(s.name()));
  const auto& stat = ctx.f_lambda_stat(s);
  uniq.conclusion["antecedent"] = to_json(stat, false);
  Status uniq_concl = Status::Inconclusive;
  if (needs_conclusion(uniq, stat.status)) {
    bool fired = false;
    Json alternatives = Json::array();
    for (double shift : {-4.0 * xi0, 4.0 * xi0}) {
      const auto rep = f_lambda_stat_convergent(x, lx + shift, m, s, opts);
      alternatives.push_back({{"limit", lx + shift}, {"status", to_string(rep.status)}});
      fired = fired || rep.holds();
    }
    Json library = Json::array();
    for (const auto& lib : builtin_moduli()) {
      if (!lib.claimed_unbounded()) continue;
      const auto est = estimate_stat_limit(x, lib, s, xi0, opts.density);
      Json e{{"modulus", lib.name()}, {"limit", est ? Json(*est) : Json(nullptr)}};
      if (est) {
        const auto rep = f_lambda_stat_convergent(x, *est, lib, s, opts);
        e["status"] = to_string(rep.status);
        if (rep.holds() && std::abs(*est - lx) > 2.0 * xi0) {
          fired = true;
          e["disagrees"] = true;
        }
      }
      library.push_back(std::move(e));
    }
    uniq.conclusion["alternatives"] = std::move(alternatives);
    uniq.conclusion["library"] = std::move(library);
    uniq.conclusion["flag_fired"] = fired;
    uniq_concl = fired ? Status::Fails : Status::Holds;
  }
  uniq.conclusion["status"] = status_json(uniq_concl);
  settle(uniq, stat.status, uniq_concl);

  // Linearity: sum, difference and scaled prefixes at the combined limits.
  auto lin = make(TheoremId::C1_linear, met, {{"unbounded", met}}, ctx.recipe(s.name()));
  lin.recipe["partner"] = other.label;
  lin.recipe["partner_spec"] = other.spec ? *other.spec : Json(nullptr);
  lin.recipe["partner_limit"] = ly;
  lin.recipe["alpha"] = alpha;
  const auto other_stat = f_lambda_stat_convergent(other.x, ly, m, s, opts);
  Status ante = Status::Holds;
  if (stat.status == Status::Fails || other_stat.status == Status::Fails) {
    ante = Status::Fails;
  } else if (stat.status != Status::Holds || other_stat.status != Status::Holds) {
    ante = Status::Inconclusive;
  }
  lin.conclusion["antecedent"] = {{"x", to_string(stat.status)},
                                  {"y", to_string(other_stat.status)}};
  Status lin_concl = Status::Inconclusive;
  if (needs_conclusion(lin, ante)) {
    const std::size_t n = x.size();
    std::vector<double> sum(n), diff(n), scal(n);
    for (std::size_t t = 1; t <= n; ++t) {
      sum[t - 1] = x.at(t) + other.x.at(t);
      diff[t - 1] = x.at(t) - other.x.at(t);
      scal[t - 1] = alpha * x.at(t);
    }
    const auto two = scaled(opts, 2.0);
    const auto r_sum = f_lambda_stat_convergent(SequencePrefix(std::move(sum)), lx + ly, m, s, two);
    const auto r_diff =
        f_lambda_stat_convergent(SequencePrefix(std::move(diff)), lx - ly, m, s, two);
    const auto r_scal = f_lambda_stat_convergent(
        SequencePrefix(std::move(scal)), alpha * lx, m, s,
        alpha == 0.0 ? opts : scaled(opts, std::abs(alpha)));
    lin.conclusion["sum"] = to_json(r_sum, false);
    lin.conclusion["difference"] = to_json(r_diff, false);
    lin.conclusion["scaled"] = to_json(r_scal, false);
    const Status all[] = {r_sum.status, r_diff.status, r_scal.status};
    lin_concl = Status::Holds;
    for (Status st : all) {
      if (st == Status::Fails) {
        lin_concl = Status::Fails;
        break;
      }
      if (st == Status::Inconclusive) lin_concl = Status::Inconclusive;
    }
  }
  lin.conclusion["status"] = status_json(lin_concl);
  settle(lin, ante, lin_concl);
  return {uniq, lin};
}

namespace {

struct SuiteItem {
  std::size_t subject = 0;
  std::size_t modulus = 0;
};

std::vector<TheoremCheck> run_item(const std::vector<Subject>& subjects, const SuiteItem& item,
                                   const RunConfig& config, const LabOptions& lab) {
  const Subject& sub = subjects[item.subject];
  LabContext ctx(sub, Modulus::parse(config.moduli[item.modulus]), lab);
  std::optional<LambdaSeq> mu;
  if (config.mu) mu = LambdaSeq::parse(*config.mu);
  const Subject* partner =
      subjects.size() >= 2 ? &subjects[(item.subject + 1) % subjects.size()] : nullptr;

  std::vector<TheoremCheck> out;
  auto add = [&out](auto&& checks) {
    for (auto& c : checks) out.push_back(std::move(c));
  };
  for (const auto& name : config.lambdas) {
    const auto s = LambdaSeq::parse(name);
    add(check_t1(ctx, s));
    if (partner) add(check_c1(ctx, *partner, s, config.alpha));
    out.push_back(check_t2(ctx, s));
    out.push_back(check_t3(ctx, s));
    add(check_cauchy_equiv(ctx, s));
    out.push_back(check_t7(ctx, s));
    out.push_back(check_t8(ctx, s));
    if (mu && !domination_violation(s, *mu, sub.x.size())) {
      add(check_t9(ctx, s, *mu));
      add(check_t10_c4(ctx, s, *mu));
    }
  }
  return out;
}

}  // namespace

SuiteReport run_suite(const RunConfig& config) {
  config.validate();
  const auto specs = config.corpus ? expand_corpus(*config.corpus, config.horizon, config.seed)
                                   : default_corpus(config.horizon, config.seed);
  LabOptions lab;
  lab.classifier = config.classifier;
  lab.d_max = config.d_max;
  lab.z_max = config.z_max;
  lab.candidate_count = config.candidate_count;

  std::vector<Subject> subjects;
  subjects.reserve(specs.size());
  for (const auto& spec : specs) {
    subjects.push_back(Subject{generate(spec), spec.limit, spec.label(), spec.to_json()});
  }

  std::vector<SuiteItem> items;
  for (std::size_t i = 0; i < subjects.size(); ++i) {
    for (std::size_t k = 0; k < config.moduli.size(); ++k) items.push_back({i, k});
  }

  std::vector<std::vector<TheoremCheck>> results(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i] = run_item(subjects, items[i], config, lab);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SuiteReport rep;
  rep.sequences = subjects.size();
  for (auto id : kAllTheorems) {
    rep.non_vacuous_supported[id] = 0;
    for (auto o : {Outcome::Supported, Outcome::HypothesisNotMet, Outcome::Violated,
                   Outcome::Inconclusive}) {
      rep.counts[id][o] = 0;
    }
  }
  for (auto& r : results) {
    for (auto& c : r) {
      ++rep.counts[c.id][c.outcome];
      if (c.outcome == Outcome::Violated) ++rep.violated;
      if (c.outcome == Outcome::Supported && !c.vacuous) ++rep.non_vacuous_supported[c.id];
      rep.checks.push_back(std::move(c));
    }
  }
  rep.coverage_met = std::all_of(kAllTheorems.begin(), kAllTheorems.end(),
                                 [&](TheoremId id) { return rep.non_vacuous_supported[id] > 0; });
  return rep;
}

}  // namespace modstat
