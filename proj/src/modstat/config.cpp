#include "modstat/config.hpp"

#include <cmath>

#include "modstat/error.hpp"

namespace modstat {

namespace {

template <class T>
T field(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("config field '") + key + "' has the wrong type");
  }
}

// Cartesian expansion of array-valued numeric fields ("indices" is a real list).
void expand_entry(const Json& entry, std::vector<Json>& out) {
  for (auto it = entry.begin(); it != entry.end(); ++it) {
    if (it.key() == "indices" || !it.value().is_array()) continue;
    if (it.value().empty()) throw UsageError("empty parameter grid for '" + it.key() + "'");
    for (const auto& v : it.value()) {
      Json copy = entry;
      copy[it.key()] = v;
      expand_entry(copy, out);
    }
    return;
  }
  out.push_back(entry);
}

}  // namespace

RunConfig RunConfig::from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  static const char* known[] = {"horizon", "xi",    "tau",   "tail_window", "moduli",
                                "lambdas", "mu",    "seed",  "d_max",       "z_max",
                                "alpha",   "candidate_count", "corpus",     "out",
                                "threads"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw UsageError("unknown config field '" + it.key() + "'");
  }
  RunConfig c;
  c.horizon = field<std::size_t>(j, "horizon", c.horizon);
  c.classifier.xi = field<std::vector<double>>(j, "xi", c.classifier.xi);
  c.classifier.density.tau = field<double>(j, "tau", c.classifier.density.tau);
  c.classifier.density.tail_window =
      field<std::size_t>(j, "tail_window", c.classifier.density.tail_window);
  c.moduli = field<std::vector<std::string>>(j, "moduli", c.moduli);
  c.lambdas = field<std::vector<std::string>>(j, "lambdas", c.lambdas);
  if (j.contains("mu")) {
    if (j.at("mu").is_null()) {
      c.mu.reset();
    } else {
      c.mu = field<std::string>(j, "mu", "full");
    }
  }
  c.seed = field<std::uint64_t>(j, "seed", c.seed);
  c.d_max = field<std::size_t>(j, "d_max", c.d_max);
  c.z_max = field<std::size_t>(j, "z_max", c.z_max);
  c.alpha = field<double>(j, "alpha", c.alpha);
  c.candidate_count = field<std::size_t>(j, "candidate_count", c.candidate_count);
  if (j.contains("corpus")) {
    if (!j.at("corpus").is_array()) throw UsageError("config field 'corpus' must be an array");
    c.corpus = j.at("corpus");
  }
  c.threads = field<unsigned>(j, "threads", 0);
  if (j.contains("out")) c.out = field<std::string>(j, "out", "");
  c.validate();
  return c;
}

Json RunConfig::to_json() const {
  Json j;
  j["horizon"] = horizon;
  j["xi"] = classifier.xi;
  j["tau"] = classifier.density.tau;
  j["tail_window"] = classifier.density.tail_window;
  j["moduli"] = moduli;
  j["lambdas"] = lambdas;
  j["mu"] = mu ? Json(*mu) : Json(nullptr);
  j["seed"] = seed;
  j["d_max"] = d_max;
  j["z_max"] = z_max;
  j["alpha"] = alpha;
  j["candidate_count"] = candidate_count;
  j["corpus"] = corpus ? *corpus : default_corpus_json();
  return j;
}

void RunConfig::validate() const {
  if (horizon < 100) throw UsageError("horizon must be >= 100");
  if (classifier.xi.empty()) throw UsageError("xi list is empty");
  for (double x : classifier.xi) {
    if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("xi values must be positive");
  }
  const double tau = classifier.density.tau;
  if (!(tau > 0.0 && tau < 1.0)) throw UsageError("tau must be in (0, 1)");
  if (d_max < 1 || z_max < 1) throw UsageError("d_max and z_max must be >= 1");
  if (candidate_count < 1) throw UsageError("candidate_count must be >= 1");
  if (!std::isfinite(alpha)) throw UsageError("alpha must be finite");
  for (const auto& m : moduli) {
    require_unbounded(Modulus::parse(m), "the theorem suite");
  }
  for (const auto& s : lambdas) (void)LambdaSeq::parse(s);
  if (mu) (void)LambdaSeq::parse(*mu);
}

std::vector<GeneratorSpec> expand_corpus(const Json& corpus, std::size_t horizon,
                                         std::uint64_t seed) {
  if (!corpus.is_array()) throw UsageError("corpus must be an array of generator specs");
  std::vector<GeneratorSpec> specs;
  for (const auto& entry : corpus) {
    if (!entry.is_object()) throw UsageError("corpus entries must be objects");
    std::vector<Json> expanded;
    expand_entry(entry, expanded);
    for (auto& e : expanded) {
      if (!e.contains("N")) e["N"] = horizon;
      if (e.value("kind", "") == "noisy_spike" && !e.contains("seed")) e["seed"] = seed;
      specs.push_back(GeneratorSpec::from_json(e));
    }
  }
  return specs;
}

Json default_corpus_json() {
  return Json::parse(R"([
    {"kind":"constant","L":3},
    {"kind":"decay","L":1,"power":1},
    {"kind":"spike","L":0,"set":"squares","magnitude":1},
    {"kind":"spike","L":2,"set":"powers_of_2","magnitude":1},
    {"kind":"oscillate","L":0,"amplitude":1},
    {"kind":"noisy_spike","L":1,"set":"squares","magnitude":1,"noise_amp":0.004},
    {"kind":"spike","L":0,"set":"evens","magnitude":1},
    {"kind":"spike","L":0,"set":"block","period":10,"width":1,"magnitude":1}
  ])");
}

std::vector<GeneratorSpec> default_corpus(std::size_t horizon, std::uint64_t seed) {
  return expand_corpus(default_corpus_json(), horizon, seed);
}

}  // namespace modstat
