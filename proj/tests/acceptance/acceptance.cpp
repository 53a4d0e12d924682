// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// usage: acceptance <path to modstat-cli>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include "modstat/config.hpp"
#include "modstat/decompose.hpp"
#include "modstat/theorem_lab.hpp"

using namespace modstat;

namespace {


// Collects failures; detail keeps the first few.
struct Gate {
  bool pass = true;
  std::ostringstream detail;
  int noted = 0;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (noted++ < 4) detail << (noted > 1 ? "; " : "") << what;
  }
};

int failures = 0;

void run(const char* id, const char* title, double budget_s, const std::function<void(Gate&)>& body) {
  Gate g;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(g);
  } catch (const std::exception& e) {
    g.expect(false, std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g.expect(secs < budget_s, "runtime " + std::to_string(secs) + " s over budget");
  std::printf("%s %s  %s (%.2f s, budget %.0f s)%s%s\n", id, g.pass ? "PASS" : "FAIL", title,
              secs, budget_s, g.pass ? "" : ": ", g.detail.str().c_str());
  std::fflush(stdout);
  if (!g.pass) ++failures;
}

SequencePrefix spikes_on_squares(std::size_t n) {
  return generate(GeneratorSpec::from_json(
      Json{{"kind", "spike"}, {"L", 0}, {"set", "squares"}, {"N", n}}));
}

ClassifierOptions at_xi(double xi) {
  ClassifierOptions o;
  o.xi = {xi};
  return o;
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& cli, const std::vector<std::string>& args) {
  const pid_t pid = ::fork();
  if (pid == 0) {
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(cli.c_str()));
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    ::execv(cli.c_str(), argv.data());
    std::_Exit(127);
  }
  int status = 0;
  ::waitpid(pid, &status, 0);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void ac1(Gate& g) {
  const auto moduli = builtin_moduli();
  g.expect(moduli.size() == 5, "expected five built-in moduli");
  for (const auto& m : moduli) {
    g.expect(validate_modulus(m).all_passed(), m.name() + " fails an axiom");
  }
  const auto sq = Modulus::pluggable([](double x) { return x * x; }, "x^2", true);
  const auto r = validate_modulus(sq);
  g.expect(!r.axiom_subadditive.passed, "x^2 passes subadditivity");
  g.expect(r.axiom_subadditive.x == 1.0 && r.axiom_subadditive.y == 1.0,
           "x^2 witness is (" + std::to_string(r.axiom_subadditive.x) + ", " +
               std::to_string(r.axiom_subadditive.y) + ")");
}

void ac2(Gate& g) {
  const std::size_t h = 10000;
  std::mt19937_64 rng(2024);
  const LambdaSeq lambdas[] = {LambdaSeq::full(), LambdaSeq::affine(0.5), LambdaSeq::sqrt(),
                               LambdaSeq::log_grow()};
  for (int k = 0; k < 20; ++k) {
    const double p = std::ldexp(1.0, -(k % 8));
    std::bernoulli_distribution coin(p);
    std::vector<std::size_t> members;
    for (std::size_t t = 1; t <= h; ++t) {
      if (coin(rng)) members.push_back(t);
    }
    const auto a = IndexSet::from_list(members, h);
    const auto& s = lambdas[k % 4];
    const auto counts = windowed_counts(a, WindowSchedule::for_lambda(s, h));
    for (std::size_t n = 1; n <= h; ++n) {
      const double start = std::max(1.0, std::ceil(static_cast<double>(n) - s(n) + 1.0));
      std::size_t c = 0;
      for (std::size_t t = static_cast<std::size_t>(start); t <= n; ++t) c += a.contains(t);
      if (counts[n - 1] != c) {
        g.expect(false, "set " + std::to_string(k) + " (" + s.name() + ") n=" +
                            std::to_string(n) + ": " + std::to_string(counts[n - 1]) +
                            " vs " + std::to_string(c));
        break;
      }
    }
  }
  const std::size_t big = 1000000;
  const auto ev = natural_density(evens_set(big), big);
  g.expect(std::abs(ev.tail_min - 0.5) <= 1e-3 && std::abs(ev.tail_max - 0.5) <= 1e-3,
           "natural density of evens tail [" + std::to_string(ev.tail_min) + ", " +
               std::to_string(ev.tail_max) + "]");
  const auto sq = f_density(squares_set(big), Modulus::log1p(), big);
  g.expect(std::abs(sq.tail_min - 0.5) <= 0.02 && std::abs(sq.tail_max - 0.5) <= 0.02,
           "log1p density of squares tail [" + std::to_string(sq.tail_min) + ", " +
               std::to_string(sq.tail_max) + "]");
}

void ac3(Gate& g) {
  const auto x = spikes_on_squares(1000000);
  const auto full = LambdaSeq::full();
  const auto id = f_lambda_stat_convergent(x, 0.0, Modulus::identity(), full, at_xi(0.5));
  g.expect(id.status == Status::Holds, std::string("identity: ") + to_string(id.status));
  const auto lg = f_lambda_stat_convergent(x, 0.0, Modulus::log1p(), full, at_xi(0.5));
  g.expect(lg.status == Status::Fails, std::string("log1p: ") + to_string(lg.status));
  const auto fs = f_stat_convergent(x, 0.0, Modulus::log1p(), at_xi(0.5));
  g.expect(fs.status == Status::Fails, std::string("log1p f-stat: ") + to_string(fs.status));
}

void ac4(Gate& g) {
  const auto id = Modulus::identity();
  const auto full = LambdaSeq::full();
  int holding = 0;
  for (const auto& spec : default_corpus(100000, 7)) {
    const auto x = generate(spec);
    const double L = spec.limit;
    if (f_lambda_stat_convergent(x, L, id, full).status != Status::Holds) continue;
    ++holding;
    const auto th = thresholds(x, L, id, full);
    const auto dec = decompose(x, L, th);
    const auto v = verify_decomposition(x, dec, id, full);
    g.expect(v.all_passed(), spec.label() + " fails verification");
    g.expect(v.max_reconstruction_error < 1e-12, spec.label() + " reconstruction error");
    g.expect(v.support_profile.verdict == Verdict::Zero, spec.label() + " z-support not Zero");
  }
  g.expect(holding >= 3, "too few convergent corpus sequences: " + std::to_string(holding));
}

void ac5(Gate& g) {
  const auto x = spikes_on_squares(1000000);
  const auto es = exceptional_set(x, 0.0, Modulus::identity(), LambdaSeq::full());
  g.expect(es.density_profile.verdict == Verdict::Zero, "T density is not Zero");
  g.expect(verify_off_t_convergence(x, 0.0, es).passed, "off-T convergence fails");
  auto adversarial = es;
  adversarial.t = IndexSet::empty(x.size());
  const auto bad = verify_off_t_convergence(x, 0.0, adversarial);
  g.expect(!bad.passed, "empty T accepted");
  g.expect(bad.witness_t >= 1 && std::abs(x.at(bad.witness_t)) > 1.0 / static_cast<double>(bad.level),
           "witness does not violate its bound");
}

void ac6(Gate& g, RunConfig cfg) {
  const auto rep = run_suite(cfg);
  g.expect(rep.violated == 0, std::to_string(rep.violated) + " Violated outcomes");
  for (auto id : kAllTheorems) {
    g.expect(rep.non_vacuous_supported.at(id) > 0,
             std::string("no non-vacuous support for ") + to_string(id));
  }
}

void ac7(Gate& g) {
  const auto id = Modulus::identity();
  const auto full = LambdaSeq::full();
  std::vector<Subject> conv;
  for (const auto& spec : default_corpus(100000, 7)) {
    Subject s{generate(spec), spec.limit, spec.label(), spec.to_json()};
    if (f_lambda_stat_convergent(s.x, s.limit, id, full).status == Status::Holds) {
      conv.push_back(std::move(s));
    }
  }
  int pairs = 0;
  for (std::size_t i = 0; i < conv.size() && pairs < 10; ++i) {
    LabContext ctx(conv[i], id, LabOptions{});
    for (std::size_t j = i + 1; j < conv.size() && pairs < 10; ++j, ++pairs) {
      const auto [uniq, lin] = check_c1(ctx, conv[j], full, -1.5);
      const std::string tag = conv[i].label + " + " + conv[j].label;
      g.expect(uniq.conclusion.value("flag_fired", true) == false, "uniqueness flag on " + tag);
      g.expect(lin.outcome == Outcome::Supported && !lin.vacuous, "linearity not held on " + tag);
      for (const char* k : {"sum", "difference", "scaled"}) {
        g.expect(lin.conclusion.contains(k) && lin.conclusion[k]["status"] == "Holds",
                 std::string(k) + " not Holds on " + tag);
      }
    }
  }
  g.expect(pairs == 10, "only " + std::to_string(pairs) + " convergent pairs");
}

void ac8(Gate& g, const std::string& cli) {
  const std::string dir = "/tmp/modstat_acceptance_" + std::to_string(::getpid());
  ::mkdir(dir.c_str(), 0700);
  const std::string cfg = dir + "/config.json";
  std::ofstream(cfg) << R"({"horizon":100000,"seed":7})";
  const std::string a = dir + "/run1.json", b = dir + "/run2.json";
  const int ea = run_cli(cli, {"verify-theorems", "--config", cfg, "--out", a});
  const int eb = run_cli(cli, {"verify-theorems", "--config", cfg, "--out", b, "--threads", "4"});
  g.expect(ea == 0 && eb == 0, "exit codes " + std::to_string(ea) + ", " + std::to_string(eb));
  const auto ra = read_all(a), rb = read_all(b);
  g.expect(!ra.empty(), "empty report");
  g.expect(ra == rb, "reports differ");
  std::remove(a.c_str());
  std::remove(b.c_str());
  std::remove(cfg.c_str());
  ::rmdir(dir.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <modstat-cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  RunConfig suite;  // default corpus, {identity, affinelog} x {full, affine:0.5, sqrt}, mu = full
  suite.horizon = 100000;

  run("AC1", "modulus axioms on the default grid, x^2 witness (1,1)", 1, ac1);
  run("AC2", "windowed counts vs brute force; evens and log1p-squares densities", 30, ac2);
  run("AC3", "spike-on-squares Holds under identity, Fails under log1p (xi 0.5, 1e6)", 30, ac3);
  run("AC4", "threshold decomposition verified on convergent corpus sequences", 60, ac4);
  run("AC5", "exceptional set has density zero; empty T is refuted", 30, ac5);
  run("AC6", "theorem suite: no violations, coverage gate met (horizon 1e5)", 300,
      [&](Gate& g) { ac6(g, suite); });
  run("AC7", "linearity and uniqueness on 10 corpus pairs", 60, ac7);
  run("AC8", "verify-theorems reports are byte-identical across runs", 600,
      [&](Gate& g) { ac8(g, cli); });
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
