#include "modstat/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "modstat/error.hpp"

namespace modstat {

namespace {

Json meta(Json config, std::optional<std::uint64_t> seed) {
  return {{"config", std::move(config)},
          {"version", kVersion},
          {"seed", seed ? Json(*seed) : Json(nullptr)}};
}

Json profile_entry(const DensityProfile& p, std::optional<double> xi, bool with_points = true) {
  Json j;
  if (xi) j["xi"] = *xi;
  j["verdict"] = to_string(p.verdict);
  j["samples"] = p.samples.size();
  Json pts = Json::array();
  if (with_points) {
    for (const auto& s : p.samples) pts.push_back({{"n", s.n}, {"ratio", s.ratio}});
  }
  j["points"] = std::move(pts);
  return j;
}

// points: 0 = none, 1 = smallest xi only, 2 = all
Json result_row(const ConvergenceReport& r, Json params, int points) {
  Json row;
  row["mode"] = to_string(r.mode);
  row["params"] = std::move(params);
  row["verdict"] = to_string(r.status);
  Json profiles = Json::array();
  Json diag = to_json(r, false);
  double xi0 = 0.0;
  for (const auto& x : r.per_xi) xi0 = xi0 == 0.0 ? x.xi : std::min(xi0, x.xi);
  for (const auto& x : r.per_xi) {
    profiles.push_back(
        profile_entry(x.profile, x.xi, points == 2 || (points == 1 && x.xi == xi0)));
  }
  if (r.summability) {
    profiles.push_back(profile_entry(*r.summability, std::nullopt, points > 0));
  }
  row["profiles"] = std::move(profiles);
  row["diagnostics"] = std::move(diag);
  return row;
}

}  // namespace

ValidateResult run_validate(const Modulus& m, const LambdaSeq& s, std::size_t horizon) {
  const auto mv = validate_modulus(m);
  const auto lv = validate_lambda(s, horizon);
  ValidateResult out;
  out.all_passed = mv.all_passed() && lv.all_passed();
  Json cfg{{"modulus", m.name()}, {"lambda", s.name()}, {"horizon", horizon}};
  Json results = Json::array();
  results.push_back({{"mode", "modulus_validation"},
                     {"params", {{"modulus", m.name()}}},
                     {"verdict", mv.all_passed() ? "passed" : "failed"},
                     {"profiles", Json::array()},
                     {"diagnostics", to_json(mv)}});
  results.push_back({{"mode", "lambda_validation"},
                     {"params", {{"lambda", s.name()}, {"horizon", horizon}}},
                     {"verdict", lv.all_passed() ? "passed" : "failed"},
                     {"profiles", Json::array()},
                     {"diagnostics", to_json(lv)}});
  Json diag;
  if (m.claimed_unbounded()) {
    diag["maddox"] = to_json(maddox_constant(m));
    diag["limit_ratio"] = to_json(limit_ratio_f_over_u(m));
  }
  out.report = {{"meta", meta(cfg, std::nullopt)},
                {"results", std::move(results)},
                {"summary", {{"all_passed", out.all_passed}, {"estimators", diag}}}};
  return out;
}

AnalyzeOptions analyze_options_from_json(const Json& j) {
  AnalyzeOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) throw UsageError("analyze options must be a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& k = it.key();
      if (k == "limit") {
        if (!it.value().is_null()) o.limit = it.value().get<double>();
      } else if (k == "xi") {
        o.classifier.xi = it.value().get<std::vector<double>>();
      } else if (k == "tau") {
        o.classifier.density.tau = it.value().get<double>();
      } else if (k == "tail_window") {
        o.classifier.density.tail_window = it.value().get<std::size_t>();
      } else if (k == "candidate_count") {
        o.candidate_count = it.value().get<std::size_t>();
      } else if (k == "all_profiles") {
        o.all_profiles = it.value().get<bool>();
      } else {
        throw UsageError("unknown analyze option '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception&) {
    throw UsageError("analyze option has the wrong type");
  }
  if (o.classifier.xi.empty()) throw UsageError("xi list is empty");
  for (double x : o.classifier.xi) {
    if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("xi values must be positive");
  }
  const double tau = o.classifier.density.tau;
  if (!(tau > 0.0 && tau < 1.0)) throw UsageError("tau must be in (0, 1)");
  if (o.limit && !std::isfinite(*o.limit)) throw UsageError("limit must be finite");
  return o;
}

AnalyzeResult run_analyze(const SequencePrefix& x, const Modulus& m, const LambdaSeq& s,
                          const AnalyzeOptions& opts) {
  require_unbounded(m, "analyze");
  const auto& c = opts.classifier;
  const double xi0 = *std::min_element(c.xi.begin(), c.xi.end());

  double limit = 0.0;
  std::string source;
  if (opts.limit) {
    limit = *opts.limit;
    source = "given";
  } else if (auto e = estimate_stat_limit(x, m, s, xi0, c.density)) {
    limit = *e;
    source = "estimated";
  } else {
    std::vector<double> tail(x.values().begin() + static_cast<std::ptrdiff_t>(x.size() / 2),
                             x.values().end());
    auto mid = tail.begin() + static_cast<std::ptrdiff_t>((tail.size() - 1) / 2);
    std::nth_element(tail.begin(), mid, tail.end());
    limit = *mid;
    source = "tail_median";
  }

  const auto stat = f_lambda_stat_convergent(x, limit, m, s, c);
  const auto fstat = f_stat_convergent(x, limit, m, c);
  const auto strong_f = strong_f_lambda_summable(x, limit, m, s, c);
  const auto strong = strong_lambda_summable(x, limit, s, c);
  const auto cauchy = f_lambda_stat_cauchy_all(x, m, s, c, opts.candidate_count);

  const Json params{{"limit", limit}, {"modulus", m.name()}, {"lambda", s.name()}};
  Json results = Json::array();
  const int all = opts.all_profiles ? 2 : 0;
  results.push_back(result_row(stat, params, opts.all_profiles ? 2 : 1));
  results.push_back(result_row(fstat, {{"limit", limit}, {"modulus", m.name()}}, all));
  results.push_back(result_row(strong_f, params, opts.all_profiles ? 2 : 1));
  results.push_back(result_row(strong, {{"limit", limit}, {"lambda", s.name()}}, 1));
  results.push_back({{"mode", to_string(ConvergenceMode::FLambdaCauchy)},
                     {"params", {{"modulus", m.name()},
                                 {"lambda", s.name()},
                                 {"candidate_count", opts.candidate_count}}},
                     {"verdict", to_string(cauchy.status)},
                     {"profiles", Json::array()},
                     {"diagnostics", to_json(cauchy)}});

  Json cfg{{"modulus", m.name()},
           {"lambda", s.name()},
           {"horizon", x.size()},
           {"limit", opts.limit ? Json(*opts.limit) : Json(nullptr)},
           {"xi", c.xi},
           {"tau", c.density.tau},
           {"tail_window", c.density.tail_window},
           {"candidate_count", opts.candidate_count},
           {"all_profiles", opts.all_profiles}};

  AnalyzeResult out;
  out.verdict = stat.status;
  auto smallest = std::min_element(stat.per_xi.begin(), stat.per_xi.end(),
                                   [](const auto& a, const auto& b) { return a.xi < b.xi; });
  out.profile = smallest->profile;
  out.report = {{"meta", meta(cfg, std::nullopt)},
                {"results", std::move(results)},
                {"summary",
                 {{"verdict", to_string(stat.status)},
                  {"limit", limit},
                  {"limit_source", source}}}};
  return out;
}

DecomposeResult run_decompose(const SequencePrefix& x, double limit, const Modulus& m,
                              const LambdaSeq& s, const ThresholdOptions& opts) {
  DecomposeResult out;
  const auto th = thresholds(x, limit, m, s, opts);
  out.decomposition = decompose(x, limit, th);
  out.verification = verify_decomposition(x, out.decomposition, m, s, opts.classifier.density);
  out.decomposition.support_profile = out.verification.support_profile;

  Json cfg{{"modulus", m.name()},      {"lambda", s.name()},
           {"horizon", x.size()},      {"limit", limit},
           {"xi", opts.classifier.xi}, {"tau", opts.classifier.density.tau},
           {"tail_window", opts.classifier.density.tail_window},
           {"d_max", opts.d_max}};
  Json results = Json::array();
  results.push_back({{"mode", "decomposition"},
                     {"params", {{"limit", limit}, {"modulus", m.name()}, {"lambda", s.name()}}},
                     {"verdict", out.verification.all_passed() ? "verified" : "failed"},
                     {"profiles", Json::array({profile_entry(out.verification.support_profile,
                                                             std::nullopt)})},
                     {"diagnostics",
                      {{"thresholds", to_json(th)},
                       {"verification", to_json(out.verification, false)}}}});
  out.report = {{"meta", meta(cfg, std::nullopt)},
                {"results", std::move(results)},
                {"summary", {{"verified", out.verification.all_passed()}}}};
  return out;
}

Json to_json(const TheoremCheck& c) {
  Json j;
  j["theorem"] = to_string(c.id);
  j["outcome"] = to_string(c.outcome);
  j["vacuous"] = c.vacuous;
  j["hypothesis_met"] = c.hypothesis_met;
  j["hypothesis"] = c.hypothesis;
  j["conclusion"] = c.conclusion.is_null() ? Json::object() : c.conclusion;
  j["recipe"] = c.recipe;
  return j;
}

Json to_json(const SuiteReport& r, const RunConfig& config) {
  Json results = Json::array();
  for (const auto& c : r.checks) {
    Json row;
    row["mode"] = "theorem_check";
    row["params"] = c.recipe;
    row["verdict"] = to_string(c.outcome);
    row["profiles"] = Json::array();
    row["diagnostics"] = to_json(c);
    results.push_back(std::move(row));
  }
  Json table = Json::array();
  for (auto id : kAllTheorems) {
    Json t;
    t["theorem"] = to_string(id);
    const auto& counts = r.counts.at(id);
    for (auto o : {Outcome::Supported, Outcome::HypothesisNotMet, Outcome::Violated,
                   Outcome::Inconclusive}) {
      t[to_string(o)] = counts.at(o);
    }
    const auto nv = r.non_vacuous_supported.at(id);
    t["supported_non_vacuous"] = nv;
    t["supported_vacuous"] = counts.at(Outcome::Supported) - nv;
    table.push_back(std::move(t));
  }
  Json summary{{"sequences", r.sequences},
               {"checks", r.checks.size()},
               {"violated", r.violated},
               {"coverage_met", r.coverage_met},
               {"passed", r.passed()},
               {"table", std::move(table)}};
  return {{"meta", meta(config.to_json(), config.seed)},
          {"results", std::move(results)},
          {"summary", std::move(summary)}};
}

}  // namespace modstat
