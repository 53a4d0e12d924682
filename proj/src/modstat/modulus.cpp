#include "modstat/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "modstat/error.hpp"
#include "modstat/text.hpp"

namespace modstat {

Modulus Modulus::identity() { return {ModulusKind::Identity, 1.0, true, "identity"}; }

Modulus Modulus::power(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw UsageError("power modulus exponent must lie in (0, 1], got " + format_double(p));
  }
  return {ModulusKind::Power, p, true, "power:" + format_double(p)};
}

Modulus Modulus::log1p() { return {ModulusKind::Log1p, 1.0, true, "log1p"}; }

Modulus Modulus::affine_log() { return {ModulusKind::AffineLog, 1.0, true, "affinelog"}; }

Modulus Modulus::bounded_rational() {
  return {ModulusKind::BoundedRational, 1.0, false, "bounded-rational"};
}

Modulus Modulus::pluggable(Evaluator f, std::string name, bool claimed_unbounded) {
  if (!f) throw UsageError("pluggable modulus needs an evaluator");
  return {ModulusKind::Pluggable, 1.0, claimed_unbounded, std::move(name), std::move(f)};
}

Modulus Modulus::parse(std::string_view name) {
  if (name == "identity") return identity();
  if (name == "log1p") return log1p();
  if (name == "affinelog") return affine_log();
  if (name == "bounded-rational") return bounded_rational();
  if (name.starts_with("power:")) {
    auto p = parse_double(name.substr(6));
    if (!p) throw UsageError("bad power exponent in modulus name '" + std::string(name) + "'");
    return power(*p);
  }
  throw UsageError("unknown modulus '" + std::string(name) + "'");
}

double Modulus::eval(double x) const {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("modulus " + name_ + " evaluated at " + format_double(x));
  }
  double r = 0.0;
  switch (kind_) {
    case ModulusKind::Identity: r = x; break;
    case ModulusKind::Power: r = std::pow(x, exponent_); break;
    case ModulusKind::Log1p: r = std::log1p(x); break;
    case ModulusKind::AffineLog: r = x + std::log1p(x); break;
    case ModulusKind::BoundedRational: r = x / (1.0 + x); break;
    case ModulusKind::Pluggable: r = plugged_(x); break;
  }
  if (!std::isfinite(r)) {
    throw DomainError("modulus " + name_ + " is not finite at " + format_double(x));
  }
  return r;
}

void require_unbounded(const Modulus& m, std::string_view what) {
  if (!m.claimed_unbounded()) {
    throw UsageError(std::string(what) + " needs an unbounded modulus; " + m.name() +
                     " is bounded");
  }
}

std::vector<Modulus> builtin_moduli() {
  return {Modulus::identity(), Modulus::power(0.5), Modulus::log1p(), Modulus::affine_log(),
          Modulus::bounded_rational()};
}

std::vector<double> default_modulus_grid() {
  std::vector<double> grid{0.0};
  for (int k = 0; k <= 48; ++k) grid.push_back(std::pow(10.0, -6.0 + 0.25 * k));
  return grid;
}

namespace {

void check_grid(const std::vector<double>& grid, bool positive) {
  if (grid.empty()) throw UsageError("sample grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double g = grid[i];
    if (!std::isfinite(g) || g < 0.0 || (positive && g == 0.0)) {
      throw UsageError("sample grid point " + format_double(g) + " is out of range");
    }
    if (i > 0 && grid[i - 1] > g) throw UsageError("sample grid must be sorted");
  }
}

// Distance of (x, y) from (1, 1) on a log scale; zeros sort last.
double unit_distance(double x, double y) {
  if (x <= 0.0 || y <= 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(std::log(x)) + std::abs(std::log(y));
}

AxiomCheck check_zero(const Modulus& m, const std::vector<double>& grid) {
  AxiomCheck c;
  const double at_zero = m(0.0);
  if (at_zero != 0.0) {
    c = {false, 0.0, 0.0, std::abs(at_zero)};
    return c;
  }
  for (double x : grid) {
    if (x > 0.0 && m(x) <= 0.0) return {false, x, 0.0, -m(x)};
  }
  return c;
}

AxiomCheck check_subadditive(const Modulus& m, const std::vector<double>& grid) {
  std::vector<double> f(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = m(grid[i]);

  AxiomCheck c;
  double worst_rel = -1.0;
  double worst_dist = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const double fs = f[i] + f[j];
      const double excess = m(grid[i] + grid[j]) - fs;
      if (excess <= 1e-12 * (1.0 + fs)) continue;
      // Worst = largest relative excess; exact ties go to the pair nearest (1, 1).
      const double rel = fs > 0.0 ? excess / fs : excess;
      const double dist = unit_distance(grid[i], grid[j]);
      if (rel > worst_rel || (rel == worst_rel && dist < worst_dist)) {
        worst_rel = rel;
        worst_dist = dist;
        c = {false, grid[i], grid[j], excess};
      }
    }
  }
  return c;
}

AxiomCheck check_increasing(const Modulus& m, const std::vector<double>& grid) {
  AxiomCheck c;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double drop = m(grid[i]) - m(grid[i + 1]);
    if (drop > 1e-12 && drop > c.violation) c = {false, grid[i], grid[i + 1], drop};
  }
  return c;
}

// eval(10^-k) must be nonincreasing in k and fall below 1e-9. k = 1..12 is always
// walked; slow power laws continue down the ladder until they cross the floor.
AxiomCheck check_right_continuous(const Modulus& m) {
  constexpr double kFloor = 1e-9;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 300; ++k) {
    const double x = std::pow(10.0, -k);
    const double v = m(x);
    if (v > prev + 1e-12) return {false, x, std::pow(10.0, -(k - 1)), v - prev};
    prev = v;
    if (k >= 12 && v < kFloor) return {};
  }
  return {false, 1e-300, 0.0, prev};
}

}  // namespace

ModulusValidationReport validate_modulus(const Modulus& m, const std::vector<double>& grid) {
  check_grid(grid, false);
  ModulusValidationReport r;
  r.grid = grid;
  r.axiom_zero = check_zero(m, grid);
  r.axiom_subadditive = check_subadditive(m, grid);
  r.axiom_increasing = check_increasing(m, grid);
  r.axiom_right_continuous = check_right_continuous(m);
  r.unbounded_evidence = m(grid.back());
  return r;
}

MaddoxEstimate maddox_constant(const Modulus& m, const std::vector<double>& grid) {
  check_grid(grid, true);
  MaddoxEstimate est;
  est.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i; j < grid.size(); ++j) {
      const double den = m(grid[i]) * m(grid[j]);
      if (!(den > 0.0)) continue;
      const double ratio = m(grid[i] * grid[j]) / den;
      if (ratio < est.min_ratio) {
        est.min_ratio = ratio;
        est.witness_x = grid[i];
        est.witness_y = grid[j];
      }
    }
  }

  // f(x^2)/f(x)^2 across the top three decades of the grid: a steady fall of more
  // than 10% means the infimum is still heading to 0 beyond the sampled range.
  std::vector<double> diag;
  const double top = grid.back();
  for (double x : grid) {
    if (x >= 1.0 && x >= top / 1e3) diag.push_back(m(x * x) / (m(x) * m(x)));
  }
  if (diag.size() >= 3) {
    const bool falling = std::adjacent_find(diag.begin(), diag.end(),
                                            [](double a, double b) { return b >= a; }) ==
                         diag.end();
    est.diagonal_decay = falling && diag.back() < 0.9 * diag.front();
  }

  if (est.min_ratio >= kMaddoxFloor && !est.diagonal_decay) est.constant = est.min_ratio;
  return est;
}

MaddoxEstimate maddox_constant(const Modulus& m) {
  auto grid = default_modulus_grid();
  grid.erase(grid.begin());  // drop 0
  return maddox_constant(m, grid);
}

LimitRatio limit_ratio_f_over_u(const Modulus& m, double u_max) {
  if (!(u_max >= 1e6) || !std::isfinite(u_max)) {
    throw UsageError("limit ratio ladder needs u_max >= 1e6");
  }
  std::vector<double> ladder;
  for (double u = 1.0; u < u_max; u *= 10.0) ladder.push_back(m(u) / u);
  ladder.push_back(m(u_max) / u_max);

  LimitRatio out;
  out.estimate = ladder.back();
  const auto tail_begin = ladder.end() - 3;
  const auto [lo, hi] = std::minmax_element(tail_begin, ladder.end());
  // Stabilized: the last three rungs agree within a factor of two.
  out.positive = *lo > 1e-9 && *lo >= 0.5 * *hi;
  return out;
}

}  // namespace modstat
