#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modstat {

enum class ModulusKind { Identity, Power, Log1p, AffineLog, BoundedRational, Pluggable };

// A modulus function f: [0, inf) -> [0, inf). Immutable after construction.
class Modulus {
 public:
  using Evaluator = std::function<double(double)>;

  static Modulus identity();
  static Modulus power(double p);  // p in (0, 1]
  static Modulus log1p();
  static Modulus affine_log();
  static Modulus bounded_rational();
  static Modulus pluggable(Evaluator f, std::string name, bool claimed_unbounded);

  // Accepts `identity`, `power:<p>`, `log1p`, `affinelog`, `bounded-rational`.
  static Modulus parse(std::string_view name);

  // Throws DomainError for negative / non-finite x or a non-finite result.
  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  ModulusKind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  bool claimed_unbounded() const noexcept { return unbounded_; }
  const std::string& name() const noexcept { return name_; }

 private:
  Modulus(ModulusKind kind, double exponent, bool unbounded, std::string name, Evaluator f = {})
      : kind_(kind), exponent_(exponent), unbounded_(unbounded), name_(std::move(name)),
        plugged_(std::move(f)) {}

  ModulusKind kind_;
  double exponent_;
  bool unbounded_;
  std::string name_;
  Evaluator plugged_;
};

// Throws UsageError when m is not flagged unbounded; `what` names the caller.
void require_unbounded(const Modulus& m, std::string_view what);

// The five built-ins, in a fixed order (power uses p = 0.5).
std::vector<Modulus> builtin_moduli();

// {0} plus 49 geometric points 1e-6 .. 1e6 (a quarter decade apart).
std::vector<double> default_modulus_grid();

struct AxiomCheck {
  bool passed = true;
  // Witness of the worst violation (meaningful when !passed).
  double x = 0.0;
  double y = 0.0;
  double violation = 0.0;
};

struct ModulusValidationReport {
  AxiomCheck axiom_zero;
  AxiomCheck axiom_subadditive;
  AxiomCheck axiom_increasing;
  AxiomCheck axiom_right_continuous;
  double unbounded_evidence = 0.0;
  std::vector<double> grid;

  bool all_passed() const noexcept {
    return axiom_zero.passed && axiom_subadditive.passed && axiom_increasing.passed &&
           axiom_right_continuous.passed;
  }
};

// Sampled check of the four modulus axioms. Throws UsageError on an empty,
// unsorted or negative grid.
ModulusValidationReport validate_modulus(const Modulus& m, const std::vector<double>& grid);
inline ModulusValidationReport validate_modulus(const Modulus& m) {
  return validate_modulus(m, default_modulus_grid());
}

struct MaddoxEstimate {
  std::optional<double> constant;  // absent: condition fails empirically
  double min_ratio = 0.0;          // min of f(xy) / (f(x) f(y)) over grid pairs
  double witness_x = 0.0;
  double witness_y = 0.0;
  bool diagonal_decay = false;     // f(x^2)/f(x)^2 still falling at the grid top
};

inline constexpr double kMaddoxFloor = 1e-9;

// Largest c with f(xy) >= c f(x) f(y) over all pairs of the positive grid.
MaddoxEstimate maddox_constant(const Modulus& m, const std::vector<double>& grid);
MaddoxEstimate maddox_constant(const Modulus& m);

struct LimitRatio {
  bool positive = false;
  double estimate = 0.0;  // f(u_max) / u_max
};

// Estimates lim f(u)/u on the decade ladder 1, 10, ..., u_max. u_max >= 1e6.
LimitRatio limit_ratio_f_over_u(const Modulus& m, double u_max = 1e8);

}  // namespace modstat
