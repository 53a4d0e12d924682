// modstat command line front end. Talks to the library through the C API only.
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modstat/modstat.h"

namespace {

// Exit codes. The verdict-driven ones come from the command table in the README.
constexpr int kExitOk = 0;
constexpr int kExitAxiomFailure = 2;
constexpr int kExitFails = 3;
constexpr int kExitInconclusive = 4;
constexpr int kExitConstruction = 5;
constexpr int kExitSuiteFailed = 6;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;
constexpr int kExitIo = 74;

struct CliError {
  int code;
  std::string message;
};

int code_for(modstat_status s) {
  switch (s) {
    case MODSTAT_OK: return kExitOk;
    case MODSTAT_ERR_NULL_ARG:
    case MODSTAT_ERR_DOMAIN:
    case MODSTAT_ERR_USAGE: return kExitUsage;
    case MODSTAT_ERR_PARSE: return kExitData;
    case MODSTAT_ERR_IO: return kExitIo;
    case MODSTAT_ERR_PRECONDITION:
    case MODSTAT_ERR_CONSTRUCTION: return kExitConstruction;
    case MODSTAT_ERR_INTERNAL: return kExitInternal;
  }
  return kExitInternal;
}

void check(modstat_status s) {
  if (s != MODSTAT_OK) throw CliError{code_for(s), modstat_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ModulusPtr = std::unique_ptr<modstat_modulus, Deleter<modstat_modulus, modstat_modulus_free>>;
using LambdaPtr = std::unique_ptr<modstat_lambda, Deleter<modstat_lambda, modstat_lambda_free>>;
using SequencePtr =
    std::unique_ptr<modstat_sequence, Deleter<modstat_sequence, modstat_sequence_free>>;
using ReportPtr = std::unique_ptr<modstat_report, Deleter<modstat_report, modstat_report_free>>;

ModulusPtr make_modulus(const std::string& name) {
  modstat_modulus* m = nullptr;
  check(modstat_modulus_create(name.c_str(), &m));
  return ModulusPtr(m);
}

LambdaPtr make_lambda(const std::string& name) {
  modstat_lambda* s = nullptr;
  check(modstat_lambda_create(name.c_str(), &s));
  return LambdaPtr(s);
}

// Relative output paths land in $MODSTAT_OUTPUT_DIR when it is set.
std::string output_path(const std::string& path) {
  const char* dir = std::getenv("MODSTAT_OUTPUT_DIR");
  std::filesystem::path p(path);
  if (dir && *dir && p.is_relative()) {
    std::filesystem::create_directories(dir);
    return (std::filesystem::path(dir) / p).string();
  }
  return path;
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const auto full = output_path(*path);
  std::ofstream out(full, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{kExitIo, "cannot write '" + full + "'"};
  out << text;
  if (!out.flush()) throw CliError{kExitIo, "write to '" + full + "' failed"};
}

modstat_format format_for(const std::string& path, const std::string& explicit_format) {
  std::string f = explicit_format;
  if (f.empty()) {
    f = std::filesystem::path(path).extension() == ".jsonl" ? "jsonl" : "csv";
  }
  if (f == "csv") return MODSTAT_FORMAT_CSV;
  if (f == "jsonl") return MODSTAT_FORMAT_JSONL;
  throw CliError{kExitUsage, "unknown format '" + f + "' (csv or jsonl)"};
}

SequencePtr load(const std::string& path, const std::string& format) {
  modstat_sequence* x = nullptr;
  check(modstat_sequence_load(path.c_str(), format_for(path, format), &x));
  return SequencePtr(x);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{kExitIo, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ClassifierFlags {
  std::vector<double> xi;
  std::optional<double> tau;
  std::optional<std::size_t> tail_window;

  void add_to(CLI::App* app) {
    app->add_option("--xi", xi, "Tolerance list, e.g. 1,0.5,0.1")->delimiter(',');
    app->add_option("--tau", tau, "Density verdict tolerance in (0,1)");
    app->add_option("--tail-window", tail_window, "Tail window size (0 = automatic)");
  }
  void fill(nlohmann::json& j) const {
    if (!xi.empty()) j["xi"] = xi;
    if (tau) j["tau"] = *tau;
    if (tail_window) j["tail_window"] = *tail_window;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical convergence toolkit for modulus-weighted lambda-densities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(modstat_version()));

  // validate
  auto* validate = app.add_subcommand("validate", "Check modulus axioms and the lambda class");
  std::string v_modulus, v_lambda = "full";
  std::size_t v_horizon = 1000;
  std::optional<std::string> v_out;
  validate->add_option("--modulus", v_modulus, "Modulus name")->required();
  validate->add_option("--lambda", v_lambda, "Lambda sequence name");
  validate->add_option("--horizon", v_horizon, "Horizon for the lambda checks");
  validate->add_option("--out", v_out, "Report path (default: standard output)");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Classify a sequence under f and lambda");
  std::string a_input, a_format, a_modulus, a_lambda;
  std::optional<double> a_limit;
  std::optional<std::string> a_out, a_profile;
  std::size_t a_candidates = 32;
  bool a_all_profiles = false;
  ClassifierFlags a_flags;
  analyze->add_option("--input", a_input, "Sequence file (csv or jsonl)")->required();
  analyze->add_option("--format", a_format, "csv or jsonl (default: by extension)");
  analyze->add_option("--modulus", a_modulus, "Modulus name")->required();
  analyze->add_option("--lambda", a_lambda, "Lambda sequence name")->required();
  analyze->add_option("--limit", a_limit, "Candidate limit (estimated when absent)");
  analyze->add_option("--candidates", a_candidates, "Cauchy candidate count");
  analyze->add_option("--out", a_out, "Report path (default: standard output)");
  analyze->add_option("--profile-csv", a_profile, "Smallest-xi profile as n,ratio CSV");
  analyze->add_flag("--all-profiles", a_all_profiles, "Embed points for every profile");
  a_flags.add_to(analyze);

  // decompose
  auto* decompose = app.add_subcommand("decompose", "Split x into a convergent part and a null part");
  std::string d_input, d_format, d_modulus, d_lambda;
  double d_limit = 0.0;
  std::optional<std::size_t> d_max;
  std::optional<std::string> d_out, d_report;
  ClassifierFlags d_flags;
  decompose->add_option("--input", d_input, "Sequence file (csv or jsonl)")->required();
  decompose->add_option("--format", d_format, "csv or jsonl (default: by extension)");
  decompose->add_option("--limit", d_limit, "Statistical limit L")->required();
  decompose->add_option("--modulus", d_modulus, "Modulus name")->required();
  decompose->add_option("--lambda", d_lambda, "Lambda sequence name")->required();
  decompose->add_option("--d-max", d_max, "Number of threshold levels");
  decompose->add_option("--out", d_out, "t,x,y,z CSV path (default: standard output)");
  decompose->add_option("--report", d_report, "JSON report path");
  d_flags.add_to(decompose);

  // verify-theorems
  auto* verify = app.add_subcommand("verify-theorems", "Run the theorem suite over a corpus");
  std::optional<std::string> t_config, t_out;
  std::optional<unsigned> t_threads;
  verify->add_option("--config", t_config, "Suite config JSON (defaults when absent)");
  verify->add_option("--out", t_out, "Report path (default: config 'out', else stdout)");
  verify->add_option("--threads", t_threads, "Worker threads (0 = all cores)");

  // generate
  auto* gen = app.add_subcommand("generate", "Emit a generated sequence");
  std::string g_spec, g_format = "csv";
  std::optional<std::string> g_out;
  gen->add_option("--spec", g_spec, "Generator spec as inline JSON")->required();
  gen->add_option("--out", g_out, "Output path (default: standard output)");
  gen->add_option("--format", g_format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*validate) {
      auto m = make_modulus(v_modulus);
      auto s = make_lambda(v_lambda);
      modstat_report* r = nullptr;
      check(modstat_validate(m.get(), s.get(), v_horizon, &r));
      ReportPtr rep(r);
      emit(v_out, modstat_report_json(rep.get()));
      return std::string(modstat_report_verdict(rep.get())) == "passed" ? kExitOk
                                                                         : kExitAxiomFailure;
    }
    if (*analyze) {
      auto x = load(a_input, a_format);
      auto m = make_modulus(a_modulus);
      auto s = make_lambda(a_lambda);
      nlohmann::json opts = nlohmann::json::object();
      if (a_limit) opts["limit"] = *a_limit;
      opts["candidate_count"] = a_candidates;
      if (a_all_profiles) opts["all_profiles"] = true;
      a_flags.fill(opts);
      modstat_report* r = nullptr;
      check(modstat_analyze(x.get(), m.get(), s.get(), opts.dump().c_str(), &r));
      ReportPtr rep(r);
      emit(a_out, modstat_report_json(rep.get()));
      if (a_profile) emit(a_profile, modstat_report_csv(rep.get()));
      const std::string verdict = modstat_report_verdict(rep.get());
      if (verdict == "Holds") return kExitOk;
      return verdict == "Fails" ? kExitFails : kExitInconclusive;
    }
    if (*decompose) {
      auto x = load(d_input, d_format);
      auto m = make_modulus(d_modulus);
      auto s = make_lambda(d_lambda);
      nlohmann::json opts = nlohmann::json::object();
      if (d_max) opts["d_max"] = *d_max;
      d_flags.fill(opts);
      modstat_report* r = nullptr;
      check(modstat_decompose(x.get(), d_limit, m.get(), s.get(), opts.dump().c_str(), &r));
      ReportPtr rep(r);
      emit(d_out, modstat_report_csv(rep.get()));
      if (d_report) emit(d_report, modstat_report_json(rep.get()));
      if (std::string(modstat_report_verdict(rep.get())) != "verified") {
        std::cerr << "decomposition failed verification\n";
        return kExitConstruction;
      }
      return kExitOk;
    }
    if (*verify) {
      nlohmann::json cfg = nlohmann::json::object();
      if (t_config) {
        try {
          cfg = nlohmann::json::parse(read_file(*t_config));
        } catch (const nlohmann::json::parse_error& e) {
          throw CliError{kExitData, *t_config + ": " + e.what()};
        }
        if (!cfg.is_object()) throw CliError{kExitUsage, "config must be a JSON object"};
      }
      if (!t_out && cfg.contains("out") && cfg["out"].is_string()) {
        t_out = cfg["out"].get<std::string>();
      }
      if (t_threads) cfg["threads"] = *t_threads;
      modstat_report* r = nullptr;
      check(modstat_verify_theorems(cfg.dump().c_str(), &r));
      ReportPtr rep(r);
      emit(t_out, modstat_report_json(rep.get()));
      return std::string(modstat_report_verdict(rep.get())) == "passed" ? kExitOk
                                                                         : kExitSuiteFailed;
    }
    if (*gen) {
      modstat_sequence* x = nullptr;
      check(modstat_sequence_generate(g_spec.c_str(), &x));
      SequencePtr seq(x);
      const auto fmt = g_format == "jsonl" ? MODSTAT_FORMAT_JSONL : MODSTAT_FORMAT_CSV;
      if (g_out) {
        check(modstat_sequence_save(seq.get(), output_path(*g_out).c_str(), fmt));
      } else {
        std::vector<double> v(modstat_sequence_length(seq.get()));
        modstat_sequence_copy(seq.get(), v.data(), v.size());
        char buf[64];
        if (fmt == MODSTAT_FORMAT_CSV) std::cout << "t,value\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
          const auto res = std::to_chars(buf, buf + sizeof buf, v[i]);
          if (fmt == MODSTAT_FORMAT_CSV) std::cout << (i + 1) << ',';
          std::cout << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
        }
      }
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "modstat: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "modstat: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
