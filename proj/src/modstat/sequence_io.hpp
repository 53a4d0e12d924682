#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "modstat/convergence.hpp"
#include "modstat/error.hpp"

namespace modstat {

using Json = nlohmann::ordered_json;

enum class GeneratorKind { Constant, Decay, Spike, Oscillate, NoisySpike };
enum class SetKind { Squares, PowersOfTwo, Evens, Block, Explicit };

struct SpikeSet {
  SetKind kind = SetKind::Squares;
  std::size_t period = 0;
  std::size_t width = 0;
  std::vector<std::size_t> indices;

  IndexSet materialize(std::size_t horizon) const;
};

// Declarative description of a test sequence. JSON form, e.g.
//   {"kind":"spike","L":0,"set":"squares","magnitude":1,"N":1000}
//   {"kind":"spike","L":0,"set":"block","period":10,"width":1,"N":1000}
//   {"kind":"noisy_spike","L":1,"magnitude":1,"noise_amp":0.004,"seed":7,"N":1000}
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Constant;
  double limit = 0.0;
  double power = 1.0;      // decay: x_t = L + t^-power
  SpikeSet set;            // spike, noisy_spike
  double magnitude = 1.0;  // spike, noisy_spike
  double amplitude = 1.0;  // oscillate: x_t = L + amplitude (-1)^t
  double noise_amp = 0.0;  // noisy_spike: uniform in [-noise_amp, noise_amp]
  std::uint64_t seed = 0;
  std::size_t length = 0;

  static GeneratorSpec from_json(const Json& j);
  Json to_json() const;
  std::string label() const;
};

// Deterministic for a fixed spec (noise comes from mt19937_64 seeded by spec.seed).
SequencePrefix generate(const GeneratorSpec& spec);

enum class SequenceFormat { Csv, Jsonl };

SequenceFormat parse_format(std::string_view name);

// Raised when `t,value` rows skip an index.
class GapError : public ParseError {
 public:
  GapError(std::size_t missing, std::size_t line)
      : ParseError("missing index " + std::to_string(missing), line), missing_(missing) {}
  std::size_t missing_index() const noexcept { return missing_; }

 private:
  std::size_t missing_;
};

// CSV: one value per line, or `t,value` rows with t = 1, 2, ... contiguous; an optional
// non-numeric header line is skipped. JSONL: one JSON number per line.
SequencePrefix parse_sequence(std::istream& in, SequenceFormat format);
SequencePrefix load_sequence(const std::string& path, SequenceFormat format);

// Writes `t,value` rows (with header) using round-trip exact number formatting.
void write_sequence_csv(std::ostream& out, const SequencePrefix& x);
void write_sequence_jsonl(std::ostream& out, const SequencePrefix& x);

}  // namespace modstat
