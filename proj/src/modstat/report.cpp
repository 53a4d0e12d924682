#include "modstat/report.hpp"

#include <ostream>

#include "modstat/text.hpp"

namespace modstat {

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json check_json(const AxiomCheck& c) {
  Json j;
  j["passed"] = c.passed;
  if (!c.passed) {
    j["x"] = c.x;
    j["y"] = c.y;
    j["violation"] = c.violation;
  }
  return j;
}

}  // namespace

Json to_json(const DensityProfile& p, bool with_points) {
  Json j;
  j["verdict"] = to_string(p.verdict);
  j["value"] = p.verdict == Verdict::Value ? Json(p.value) : Json(nullptr);
  j["horizon"] = p.horizon;
  j["tail_window"] = p.tail_window;
  j["tolerance"] = p.tolerance;
  j["tail_min"] = p.tail_min;
  j["tail_max"] = p.tail_max;
  j["last_ratio"] = p.last_ratio;
  if (with_points) {
    Json pts = Json::array();
    for (const auto& s : p.samples) pts.push_back({{"n", s.n}, {"ratio", s.ratio}});
    j["points"] = std::move(pts);
  }
  return j;
}

Json to_json(const ConvergenceReport& r, bool with_points) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["limit"] = r.limit;
  j["status"] = to_string(r.status);
  if (!r.per_xi.empty()) {
    Json per = Json::array();
    for (const auto& x : r.per_xi) {
      Json e;
      e["xi"] = x.xi;
      e["status"] = to_string(x.status);
      e["profile"] = to_json(x.profile, with_points);
      per.push_back(std::move(e));
    }
    j["per_xi"] = std::move(per);
  }
  if (r.summability) j["summability"] = to_json(*r.summability, with_points);
  return j;
}

Json to_json(const CauchyReport& r) {
  Json j;
  j["mode"] = to_string(ConvergenceMode::FLambdaCauchy);
  j["status"] = to_string(r.status);
  Json per = Json::array();
  for (const auto& [xi, res] : r.per_xi) {
    Json e;
    e["xi"] = xi;
    e["status"] = to_string(res.status);
    e["witness_q"] = res.witness_q ? Json(*res.witness_q) : Json(nullptr);
    e["candidates_tried"] = res.candidates.size();
    e["best_tail_max"] = res.best_tail_max;
    per.push_back(std::move(e));
  }
  j["per_xi"] = std::move(per);
  return j;
}

Json to_json(const ModulusValidationReport& r) {
  Json j;
  j["zero"] = check_json(r.axiom_zero);
  j["subadditive"] = check_json(r.axiom_subadditive);
  j["increasing"] = check_json(r.axiom_increasing);
  j["right_continuous"] = check_json(r.axiom_right_continuous);
  j["unbounded_evidence"] = r.unbounded_evidence;
  j["grid_size"] = r.grid.size();
  j["all_passed"] = r.all_passed();
  return j;
}

Json to_json(const LambdaValidationReport& r) {
  Json j;
  j["first_is_one"] = r.first_is_one;
  j["first_value"] = r.first_value;
  j["nondecreasing"] = r.nondecreasing;
  j["nondecreasing_violation"] =
      r.nondecreasing ? Json(nullptr) : Json(r.nondecreasing_violation);
  j["slow_growth"] = r.slow_growth;
  j["slow_growth_violation"] =
      r.slow_growth ? Json(nullptr) : Json(r.slow_growth_violation);
  j["growth_evidence"] = r.growth_evidence;
  j["horizon"] = r.horizon;
  j["all_passed"] = r.all_passed();
  return j;
}

Json to_json(const MaddoxEstimate& e) {
  Json j;
  j["constant"] = opt(e.constant);
  j["min_ratio"] = e.min_ratio;
  j["witness_x"] = e.witness_x;
  j["witness_y"] = e.witness_y;
  j["diagonal_decay"] = e.diagonal_decay;
  return j;
}

Json to_json(const LimitRatio& r) {
  return Json{{"positive", r.positive}, {"estimate", r.estimate}};
}

Json to_json(const RatioLiminf& r) {
  return Json{{"estimate", r.estimate},
              {"previous_estimate", r.previous_estimate},
              {"hypothesis_met", r.hypothesis_met}};
}

Json to_json(const RatioNOverFLambda& r) {
  return Json{{"liminf_estimate", r.liminf_estimate},
              {"previous_estimate", r.previous_estimate},
              {"liminf_positive", r.liminf_positive},
              {"lim_is_one", r.lim_is_one}};
}

Json to_json(const Thresholds& t) {
  Json j;
  j["levels"] = t.levels;
  j["depth"] = t.depth();
  j["truncated"] = t.truncated;
  j["failed_level"] = t.truncated ? Json(t.failed_level) : Json(nullptr);
  return j;
}

Json to_json(const DecompositionVerification& v, bool with_points) {
  Json j;
  j["all_passed"] = v.all_passed();
  j["reconstruction"] = v.reconstruction;
  j["max_reconstruction_error"] = v.max_reconstruction_error;
  j["y_converges"] = v.y_converges;
  if (!v.y_converges) {
    j["convergence_failed_level"] = v.convergence_failed_level;
    j["convergence_excess"] = v.convergence_excess;
  }
  j["support_null"] = v.support_null;
  j["support_profile"] = to_json(v.support_profile, with_points);
  j["bounded"] = v.bounded;
  j["bound"] = v.bound;
  j["failures"] = v.failures;
  return j;
}

Json to_json(const OffTVerification& v) {
  Json j;
  j["passed"] = v.passed;
  if (!v.passed) {
    j["witness_t"] = v.witness_t;
    j["level"] = v.level;
    j["deviation"] = v.deviation;
  }
  return j;
}

void write_profile_csv(std::ostream& out, const DensityProfile& p) {
  out << "n,ratio\n";
  for (const auto& s : p.samples) out << s.n << ',' << format_double(s.ratio) << '\n';
}

void write_decomposition_csv(std::ostream& out, const SequencePrefix& x,
                             const Decomposition& dec) {
  out << "t,x,y,z\n";
  for (std::size_t t = 1; t <= x.size(); ++t) {
    out << t << ',' << format_double(x.at(t)) << ',' << format_double(dec.y[t - 1]) << ','
        << format_double(dec.z[t - 1]) << '\n';
  }
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace modstat
