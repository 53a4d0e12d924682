#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "modstat/convergence.hpp"
#include "modstat/sequence_io.hpp"

namespace modstat {

// Declarative suite configuration. JSON form mirrors the fields:
//   {"horizon":100000, "xi":[1,0.5,0.1,0.05,0.01], "tau":0.05, "tail_window":0,
//    "moduli":["identity","affinelog"], "lambdas":["full","affine:0.5","sqrt"],
//    "mu":"full", "seed":7, "corpus":[{"kind":"constant","L":3}, ...]}
// Any numeric corpus field given as an array is expanded as a parameter grid.
struct RunConfig {
  std::size_t horizon = 100000;
  ClassifierOptions classifier;
  std::vector<std::string> moduli{"identity", "affinelog"};
  std::vector<std::string> lambdas{"full", "affine:0.5", "sqrt"};
  std::optional<std::string> mu = "full";
  std::uint64_t seed = 7;
  std::size_t d_max = 8;
  std::size_t z_max = 8;
  double alpha = -1.5;
  std::size_t candidate_count = 32;
  std::optional<Json> corpus;  // raw corpus document; default corpus when absent
  std::optional<std::string> out;
  unsigned threads = 0;  // 0 = hardware concurrency; never serialized

  static RunConfig from_json(const Json& j);
  Json to_json() const;
  // Throws UsageError on a horizon below 100, non-positive tolerances or bad names.
  void validate() const;
};

// Expands grids and fills in N = horizon (and the seed for noisy generators
// that do not name one).
std::vector<GeneratorSpec> expand_corpus(const Json& corpus, std::size_t horizon,
                                         std::uint64_t seed);

std::vector<GeneratorSpec> default_corpus(std::size_t horizon, std::uint64_t seed);
Json default_corpus_json();

}  // namespace modstat
