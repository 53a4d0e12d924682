#include "modstat/sequence_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>

#include "modstat/text.hpp"

namespace modstat {

IndexSet SpikeSet::materialize(std::size_t horizon) const {
  switch (kind) {
    case SetKind::Squares: return squares_set(horizon);
    case SetKind::PowersOfTwo: return powers_of_two_set(horizon);
    case SetKind::Evens: return evens_set(horizon);
    case SetKind::Block: return block_set(period, width, horizon);
    case SetKind::Explicit: {
      std::vector<std::size_t> in_range;
      for (std::size_t t : indices) {
        if (t >= 1 && t <= horizon) in_range.push_back(t);
      }
      return IndexSet::from_list(in_range, horizon);
    }
  }
  throw UsageError("unknown spike set");
}

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw UsageError(std::string("generator field '") + key + "' has the wrong type");
  }
}

const char* set_name(SetKind k) {
  switch (k) {
    case SetKind::Squares: return "squares";
    case SetKind::PowersOfTwo: return "powers_of_2";
    case SetKind::Evens: return "evens";
    case SetKind::Block: return "block";
    case SetKind::Explicit: return "explicit";
  }
  return "?";
}

const char* kind_name(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Constant: return "constant";
    case GeneratorKind::Decay: return "decay";
    case GeneratorKind::Spike: return "spike";
    case GeneratorKind::Oscillate: return "oscillate";
    case GeneratorKind::NoisySpike: return "noisy_spike";
  }
  return "?";
}

SpikeSet parse_set(const Json& j) {
  SpikeSet s;
  const auto name = get_or<std::string>(j, "set", "squares");
  if (name == "squares") {
    s.kind = SetKind::Squares;
  } else if (name == "powers_of_2") {
    s.kind = SetKind::PowersOfTwo;
  } else if (name == "evens") {
    s.kind = SetKind::Evens;
  } else if (name == "block") {
    s.kind = SetKind::Block;
    s.period = get_or<std::size_t>(j, "period", 0);
    s.width = get_or<std::size_t>(j, "width", 0);
    if (s.period == 0 || s.width == 0 || s.width > s.period) {
      throw UsageError("block set needs 0 < width <= period");
    }
  } else if (name == "explicit") {
    s.kind = SetKind::Explicit;
    s.indices = get_or<std::vector<std::size_t>>(j, "indices", {});
  } else {
    throw UsageError("unknown spike set kind '" + name + "'");
  }
  return s;
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw UsageError(std::string("generator field ") + what + " is not finite");
}

}  // namespace

GeneratorSpec GeneratorSpec::from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("generator spec must be a JSON object");
  GeneratorSpec g;
  const auto kind = get_or<std::string>(j, "kind", "");
  if (kind == "constant") {
    g.kind = GeneratorKind::Constant;
  } else if (kind == "decay") {
    g.kind = GeneratorKind::Decay;
  } else if (kind == "spike") {
    g.kind = GeneratorKind::Spike;
  } else if (kind == "oscillate") {
    g.kind = GeneratorKind::Oscillate;
  } else if (kind == "noisy_spike") {
    g.kind = GeneratorKind::NoisySpike;
  } else {
    throw UsageError("unknown generator kind '" + kind + "'");
  }
  g.limit = get_or<double>(j, "L", 0.0);
  g.power = get_or<double>(j, "power", 1.0);
  g.magnitude = get_or<double>(j, "magnitude", 1.0);
  g.amplitude = get_or<double>(j, "amplitude", 1.0);
  g.noise_amp = get_or<double>(j, "noise_amp", 0.0);
  g.seed = get_or<std::uint64_t>(j, "seed", 0);
  g.length = get_or<std::size_t>(j, "N", 0);
  if (g.kind == GeneratorKind::Spike || g.kind == GeneratorKind::NoisySpike) g.set = parse_set(j);
  check_finite(g.limit, "L");
  check_finite(g.power, "power");
  check_finite(g.magnitude, "magnitude");
  check_finite(g.amplitude, "amplitude");
  check_finite(g.noise_amp, "noise_amp");
  if (g.kind == GeneratorKind::Decay && !(g.power > 0.0)) {
    throw UsageError("decay power must be positive");
  }
  if (g.noise_amp < 0.0) throw UsageError("noise_amp must be nonnegative");
  return g;
}

Json GeneratorSpec::to_json() const {
  Json j;
  j["kind"] = kind_name(kind);
  j["L"] = limit;
  switch (kind) {
    case GeneratorKind::Constant: break;
    case GeneratorKind::Decay: j["power"] = power; break;
    case GeneratorKind::Oscillate: j["amplitude"] = amplitude; break;
    case GeneratorKind::Spike:
    case GeneratorKind::NoisySpike:
      j["set"] = set_name(set.kind);
      if (set.kind == SetKind::Block) {
        j["period"] = set.period;
        j["width"] = set.width;
      }
      if (set.kind == SetKind::Explicit) j["indices"] = set.indices;
      j["magnitude"] = magnitude;
      if (kind == GeneratorKind::NoisySpike) {
        j["noise_amp"] = noise_amp;
        j["seed"] = seed;
      }
      break;
  }
  j["N"] = length;
  return j;
}

std::string GeneratorSpec::label() const {
  std::string s = std::string(kind_name(kind)) + "(L=" + format_double(limit);
  switch (kind) {
    case GeneratorKind::Constant: break;
    case GeneratorKind::Decay: s += ",power=" + format_double(power); break;
    case GeneratorKind::Oscillate: s += ",amplitude=" + format_double(amplitude); break;
    case GeneratorKind::Spike:
    case GeneratorKind::NoisySpike:
      s += std::string(",set=") + set_name(set.kind);
      if (set.kind == SetKind::Block) {
        s += ":" + std::to_string(set.period) + "/" + std::to_string(set.width);
      }
      s += ",magnitude=" + format_double(magnitude);
      if (kind == GeneratorKind::NoisySpike) {
        s += ",noise=" + format_double(noise_amp) + ",seed=" + std::to_string(seed);
      }
      break;
  }
  return s + ")";
}

SequencePrefix generate(const GeneratorSpec& spec) {
  const std::size_t n = spec.length;
  if (n < 1) throw UsageError("generator length N must be >= 1");
  std::vector<double> v(n, spec.limit);
  double bound = std::abs(spec.limit);
  switch (spec.kind) {
    case GeneratorKind::Constant: break;
    case GeneratorKind::Decay:
      for (std::size_t t = 1; t <= n; ++t) {
        v[t - 1] = spec.limit + std::pow(static_cast<double>(t), -spec.power);
      }
      bound += 1.0;
      break;
    case GeneratorKind::Oscillate:
      for (std::size_t t = 1; t <= n; ++t) {
        v[t - 1] = spec.limit + (t % 2 == 0 ? spec.amplitude : -spec.amplitude);
      }
      bound += std::abs(spec.amplitude);
      break;
    case GeneratorKind::Spike:
    case GeneratorKind::NoisySpike: {
      const auto set = spec.set.materialize(n);
      std::mt19937_64 rng(spec.seed);
      for (std::size_t t = 1; t <= n; ++t) {
        double xt = spec.limit;
        if (spec.kind == GeneratorKind::NoisySpike) {
          // 53 random bits -> [0, 1); avoids the implementation-defined distributions.
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          xt += spec.noise_amp * (2.0 * u - 1.0);
        }
        if (set.contains(t)) xt += spec.magnitude;
        v[t - 1] = xt;
      }
      bound += std::abs(spec.magnitude) + spec.noise_amp;
      break;
    }
  }
  return SequencePrefix(std::move(v), spec.limit, bound);
}

SequenceFormat parse_format(std::string_view name) {
  if (name == "csv") return SequenceFormat::Csv;
  if (name == "jsonl") return SequenceFormat::Jsonl;
  throw UsageError("unknown sequence format '" + std::string(name) + "'");
}

namespace {

SequencePrefix parse_csv(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_data = false;
  bool pairs = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    const auto fields = split(body, ',');
    if (fields.size() > 2) throw ParseError("expected `value` or `t,value`", line_no);
    if (!seen_data && !parse_double(fields[0])) continue;  // header
    const bool is_pair = fields.size() == 2;
    if (!seen_data) {
      pairs = is_pair;
      seen_data = true;
    } else if (is_pair != pairs) {
      throw ParseError("mixed `value` and `t,value` rows", line_no);
    }
    if (pairs) {
      const auto t = parse_int(fields[0]);
      if (!t) throw ParseError("bad index '" + std::string(trim(fields[0])) + "'", line_no);
      const auto expected = static_cast<long long>(values.size()) + 1;
      if (*t > expected) throw GapError(static_cast<std::size_t>(expected), line_no);
      if (*t < expected) {
        throw ParseError("index " + std::to_string(*t) + " repeats or goes backwards", line_no);
      }
    }
    const auto v = parse_double(fields.back());
    if (!v) {
      throw ParseError("bad number '" + std::string(trim(fields.back())) + "'", line_no);
    }
    if (!std::isfinite(*v)) throw ParseError("value is not finite", line_no);
    values.push_back(*v);
  }
  if (values.empty()) throw ParseError("no sequence values found");
  return SequencePrefix(std::move(values));
}

SequencePrefix parse_jsonl(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw ParseError("invalid JSON", line_no);
    }
    if (!j.is_number()) throw ParseError("expected a JSON number", line_no);
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError("value is not finite", line_no);
    values.push_back(v);
  }
  if (values.empty()) throw ParseError("no sequence values found");
  return SequencePrefix(std::move(values));
}

}  // namespace

SequencePrefix parse_sequence(std::istream& in, SequenceFormat format) {
  return format == SequenceFormat::Csv ? parse_csv(in) : parse_jsonl(in);
}

SequencePrefix load_sequence(const std::string& path, SequenceFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return parse_sequence(in, format);
}

void write_sequence_csv(std::ostream& out, const SequencePrefix& x) {
  out << "t,value\n";
  for (std::size_t t = 1; t <= x.size(); ++t) out << t << ',' << format_double(x.at(t)) << '\n';
}

void write_sequence_jsonl(std::ostream& out, const SequencePrefix& x) {
  for (double v : x.values()) out << format_double(v) << '\n';
}

}  // namespace modstat
