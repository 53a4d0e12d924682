#include "modstat/modstat.h"

#include <algorithm>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "modstat/error.hpp"
#include "modstat/pipeline.hpp"

struct modstat_modulus {
  modstat::Modulus m;
};
struct modstat_lambda {
  modstat::LambdaSeq s;
};
struct modstat_sequence {
  modstat::SequencePrefix x;
};
struct modstat_report {
  std::string json;
  std::string csv;
  bool has_csv = false;
  std::string verdict;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_error_line = 0;

modstat_status fail(modstat_status s, const std::string& msg, std::size_t line = 0) {
  g_error = msg;
  g_error_line = line;
  return s;
}

// Maps library exceptions onto status codes. Order matters: PreconditionFailed
// derives from UsageError and GapError from ParseError.
template <class F>
modstat_status guard(F&& f) {
  g_error.clear();
  g_error_line = 0;
  try {
    f();
    return MODSTAT_OK;
  } catch (const modstat::PreconditionFailed& e) {
    return fail(MODSTAT_ERR_PRECONDITION, e.what());
  } catch (const modstat::UsageError& e) {
    return fail(MODSTAT_ERR_USAGE, e.what());
  } catch (const modstat::DomainError& e) {
    return fail(MODSTAT_ERR_DOMAIN, e.what());
  } catch (const modstat::ParseError& e) {
    return fail(MODSTAT_ERR_PARSE, e.what(), e.line());
  } catch (const modstat::IoError& e) {
    return fail(MODSTAT_ERR_IO, e.what());
  } catch (const modstat::ConstructionFailed& e) {
    return fail(MODSTAT_ERR_CONSTRUCTION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MODSTAT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MODSTAT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MODSTAT_ERR_INTERNAL, "unknown error");
  }
}

modstat::Json parse_json_arg(const char* text, const char* what) {
  if (!text) return modstat::Json();
  try {
    return modstat::Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw modstat::ParseError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

modstat::SequenceFormat to_format(modstat_format f) {
  switch (f) {
    case MODSTAT_FORMAT_CSV: return modstat::SequenceFormat::Csv;
    case MODSTAT_FORMAT_JSONL: return modstat::SequenceFormat::Jsonl;
  }
  throw modstat::UsageError("unknown sequence format");
}

#define MODSTAT_REQUIRE(p) \
  if (!(p)) return fail(MODSTAT_ERR_NULL_ARG, "null argument: " #p)

}  // namespace

extern "C" {

const char* modstat_version(void) { return modstat::kVersion; }
const char* modstat_last_error(void) { return g_error.c_str(); }
size_t modstat_last_error_line(void) { return g_error_line; }

const char* modstat_status_name(modstat_status s) {
  switch (s) {
    case MODSTAT_OK: return "ok";
    case MODSTAT_ERR_NULL_ARG: return "null argument";
    case MODSTAT_ERR_DOMAIN: return "domain error";
    case MODSTAT_ERR_USAGE: return "usage error";
    case MODSTAT_ERR_PRECONDITION: return "precondition failed";
    case MODSTAT_ERR_PARSE: return "parse error";
    case MODSTAT_ERR_IO: return "i/o error";
    case MODSTAT_ERR_CONSTRUCTION: return "construction failed";
    case MODSTAT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

modstat_status modstat_modulus_create(const char* name, modstat_modulus** out) {
  MODSTAT_REQUIRE(name);
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new modstat_modulus{modstat::Modulus::parse(name)}; });
}

modstat_status modstat_modulus_eval(const modstat_modulus* m, double x, double* out) {
  MODSTAT_REQUIRE(m);
  MODSTAT_REQUIRE(out);
  return guard([&] { *out = m->m(x); });
}

const char* modstat_modulus_name(const modstat_modulus* m) {
  return m ? m->m.name().c_str() : nullptr;
}

void modstat_modulus_free(modstat_modulus* m) { delete m; }

modstat_status modstat_lambda_create(const char* name, modstat_lambda** out) {
  MODSTAT_REQUIRE(name);
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new modstat_lambda{modstat::LambdaSeq::parse(name)}; });
}

modstat_status modstat_lambda_at(const modstat_lambda* s, size_t n, double* out) {
  MODSTAT_REQUIRE(s);
  MODSTAT_REQUIRE(out);
  return guard([&] { *out = s->s(n); });
}

modstat_status modstat_lambda_window(const modstat_lambda* s, size_t n, size_t* start,
                                     size_t* end) {
  MODSTAT_REQUIRE(s);
  MODSTAT_REQUIRE(start);
  MODSTAT_REQUIRE(end);
  return guard([&] {
    const auto w = modstat::window(s->s, n);
    *start = w.start;
    *end = w.end;
  });
}

const char* modstat_lambda_name(const modstat_lambda* s) {
  return s ? s->s.name().c_str() : nullptr;
}

void modstat_lambda_free(modstat_lambda* s) { delete s; }

modstat_status modstat_sequence_from_values(const double* values, size_t n,
                                            modstat_sequence** out) {
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  if (n > 0) MODSTAT_REQUIRE(values);
  return guard([&] {
    *out = new modstat_sequence{
        modstat::SequencePrefix(std::vector<double>(values, values + n))};
  });
}

modstat_status modstat_sequence_load(const char* path, modstat_format format,
                                     modstat_sequence** out) {
  MODSTAT_REQUIRE(path);
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  return guard(
      [&] { *out = new modstat_sequence{modstat::load_sequence(path, to_format(format))}; });
}

modstat_status modstat_sequence_generate(const char* spec_json, modstat_sequence** out) {
  MODSTAT_REQUIRE(spec_json);
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    const auto spec = modstat::GeneratorSpec::from_json(parse_json_arg(spec_json, "spec"));
    *out = new modstat_sequence{modstat::generate(spec)};
  });
}

size_t modstat_sequence_length(const modstat_sequence* x) { return x ? x->x.size() : 0; }

size_t modstat_sequence_copy(const modstat_sequence* x, double* buf, size_t cap) {
  if (!x || !buf) return 0;
  const size_t n = std::min(cap, x->x.size());
  std::copy_n(x->x.values().begin(), n, buf);
  return n;
}

modstat_status modstat_sequence_known_limit(const modstat_sequence* x, int* has_limit,
                                            double* limit) {
  MODSTAT_REQUIRE(x);
  MODSTAT_REQUIRE(has_limit);
  MODSTAT_REQUIRE(limit);
  const auto l = x->x.known_limit();
  *has_limit = l.has_value() ? 1 : 0;
  *limit = l.value_or(0.0);
  return MODSTAT_OK;
}

modstat_status modstat_sequence_save(const modstat_sequence* x, const char* path,
                                     modstat_format format) {
  MODSTAT_REQUIRE(x);
  MODSTAT_REQUIRE(path);
  return guard([&] {
    const auto fmt = to_format(format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw modstat::IoError(std::string("cannot write '") + path + "'");
    if (fmt == modstat::SequenceFormat::Csv) {
      modstat::write_sequence_csv(out, x->x);
    } else {
      modstat::write_sequence_jsonl(out, x->x);
    }
    if (!out.flush()) throw modstat::IoError(std::string("write to '") + path + "' failed");
  });
}

void modstat_sequence_free(modstat_sequence* x) { delete x; }

modstat_status modstat_validate(const modstat_modulus* m, const modstat_lambda* s,
                                size_t horizon, modstat_report** out) {
  MODSTAT_REQUIRE(m);
  MODSTAT_REQUIRE(s);
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    const auto r = modstat::run_validate(m->m, s->s, horizon);
    *out = new modstat_report{modstat::dump(r.report), {}, false,
                              r.all_passed ? "passed" : "failed"};
  });
}

modstat_status modstat_analyze(const modstat_sequence* x, const modstat_modulus* m,
                               const modstat_lambda* s, const char* options_json,
                               modstat_report** out) {
  MODSTAT_REQUIRE(x);
  MODSTAT_REQUIRE(m);
  MODSTAT_REQUIRE(s);
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    const auto opts = modstat::analyze_options_from_json(parse_json_arg(options_json, "options"));
    const auto r = modstat::run_analyze(x->x, m->m, s->s, opts);
    std::ostringstream csv;
    modstat::write_profile_csv(csv, r.profile);
    *out = new modstat_report{modstat::dump(r.report), csv.str(), true,
                              modstat::to_string(r.verdict)};
  });
}

modstat_status modstat_decompose(const modstat_sequence* x, double limit,
                                 const modstat_modulus* m, const modstat_lambda* s,
                                 const char* options_json, modstat_report** out) {
  MODSTAT_REQUIRE(x);
  MODSTAT_REQUIRE(m);
  MODSTAT_REQUIRE(s);
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    const auto j = parse_json_arg(options_json, "options");
    modstat::ThresholdOptions opts;
    if (!j.is_null()) {
      modstat::Json analyze_part = modstat::Json::object();
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "d_max") {
          if (!it.value().is_number_unsigned()) throw modstat::UsageError("d_max must be >= 1");
          opts.d_max = it.value().get<std::size_t>();
        } else {
          analyze_part[it.key()] = it.value();
        }
      }
      opts.classifier = modstat::analyze_options_from_json(analyze_part).classifier;
    }
    const auto r = modstat::run_decompose(x->x, limit, m->m, s->s, opts);
    std::ostringstream csv;
    modstat::write_decomposition_csv(csv, x->x, r.decomposition);
    *out = new modstat_report{modstat::dump(r.report), csv.str(), true,
                              r.verification.all_passed() ? "verified" : "failed"};
  });
}

modstat_status modstat_verify_theorems(const char* config_json, modstat_report** out) {
  MODSTAT_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    auto j = parse_json_arg(config_json, "config");
    if (j.is_null()) j = modstat::Json::object();
    const auto config = modstat::RunConfig::from_json(j);
    const auto suite = modstat::run_suite(config);
    *out = new modstat_report{modstat::dump(modstat::to_json(suite, config)), {}, false,
                              suite.passed() ? "passed" : "failed"};
  });
}

const char* modstat_report_json(const modstat_report* r) { return r ? r->json.c_str() : nullptr; }

const char* modstat_report_csv(const modstat_report* r) {
  return r && r->has_csv ? r->csv.c_str() : nullptr;
}

const char* modstat_report_verdict(const modstat_report* r) {
  return r ? r->verdict.c_str() : nullptr;
}

void modstat_report_free(modstat_report* r) { delete r; }

}  // extern "C"
