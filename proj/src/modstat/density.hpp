#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "modstat/lambda.hpp"
#include "modstat/modulus.hpp"

namespace modstat {

// A subset of {1, ..., horizon}, stored as a membership bitmap.
class IndexSet {
 public:
  IndexSet() = default;

  // Indices must lie in [1, horizon]; order and duplicates are normalized.
  static IndexSet from_list(const std::vector<std::size_t>& indices, std::size_t horizon);
  static IndexSet from_predicate(const std::function<bool(std::size_t)>& pred,
                                 std::size_t horizon);
  static IndexSet empty(std::size_t horizon) { return from_predicate({}, horizon); }
  static IndexSet all(std::size_t horizon);

  bool contains(std::size_t t) const { return t >= 1 && t <= horizon() && bits_[t - 1]; }
  std::size_t horizon() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return size_; }
  std::vector<std::size_t> members() const;
  IndexSet complement() const;

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<bool> bits_;
  std::size_t size_ = 0;
};

IndexSet squares_set(std::size_t horizon);
IndexSet powers_of_two_set(std::size_t horizon);  // 1, 2, 4, 8, ...
IndexSet evens_set(std::size_t horizon);
// t with (t - 1) mod period < width.
IndexSet block_set(std::size_t period, std::size_t width, std::size_t horizon);

enum class Verdict { Zero, One, Value, Inconclusive };

const char* to_string(Verdict v);

struct DensityOptions {
  double tau = 0.05;
  // 0 selects max(10, 10% of the horizon).
  std::size_t tail_window = 0;
};

struct ProfilePoint {
  std::size_t n;
  double ratio;
};

struct DensityProfile {
  std::vector<ProfilePoint> samples;  // decimated beyond n = 1e4
  Verdict verdict = Verdict::Inconclusive;
  double value = 0.0;                 // limit estimate for Value (0 / 1 for Zero / One)
  std::size_t horizon = 0;
  std::size_t tail_window = 0;
  double tolerance = 0.0;
  double tail_min = 0.0;
  double tail_max = 0.0;
  double last_ratio = 0.0;
};

// Streams r_1, r_2, ..., r_horizon into a DensityProfile: keeps the decimated
// samples and the tail statistics, then applies the verdict rule.
class ProfileBuilder {
 public:
  ProfileBuilder(std::size_t horizon, const DensityOptions& opts);

  void push(std::size_t n, double ratio);
  DensityProfile finish() &&;

 private:
  DensityProfile p_;
  std::size_t tail_from_;
};

std::size_t resolve_tail_window(std::size_t horizon, const DensityOptions& opts);
bool keep_sample(std::size_t n, std::size_t horizon);
Verdict classify_tail(double tail_min, double tail_max, double tau, double* value = nullptr);

// |A ∩ I_n| for n = 1..horizon, maintained incrementally as the window slides.
std::vector<std::size_t> windowed_counts(const IndexSet& a, const WindowSchedule& w);

// r_n = f(|A ∩ I_n|) / f(length_n) under an arbitrary window schedule.
DensityProfile density_profile(const IndexSet& a, const Modulus& m, const WindowSchedule& w,
                               const DensityOptions& opts = {});

// r_n = f(|A ∩ [1, n]|) / f(n). Needs an unbounded modulus and horizon >= 100.
DensityProfile f_density(const IndexSet& a, const Modulus& m, std::size_t horizon,
                         const DensityOptions& opts = {});

// r_n = f(|A ∩ I_n|) / f(lambda_n).
DensityProfile f_lambda_density(const IndexSet& a, const Modulus& m, const LambdaSeq& s,
                                std::size_t horizon, const DensityOptions& opts = {});

DensityProfile natural_density(const IndexSet& a, std::size_t horizon,
                               const DensityOptions& opts = {});

struct ComplementCheck {
  DensityProfile a_profile;
  DensityProfile complement_profile;
  bool sandwich_holds = true;
  std::size_t sandwich_violation = 0;  // first n breaking 1 <= r_A + r_c <= r_A + 1
  bool relation_holds = false;
};

// Requires the f-density verdict of A to be Zero (UsageError otherwise).
ComplementCheck complement_check(const IndexSet& a, const Modulus& m, std::size_t horizon,
                                 const DensityOptions& opts = {});

}  // namespace modstat
