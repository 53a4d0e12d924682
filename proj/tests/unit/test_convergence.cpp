#include <cmath>
#include <random>

#include "doctest.h"
#include "modstat/convergence.hpp"
#include "modstat/error.hpp"
#include "support/oracles.hpp"

using namespace modstat;

namespace {

SequencePrefix constant(double L, std::size_t n) {
  return SequencePrefix(std::vector<double>(n, L), L, std::abs(L));
}

SequencePrefix spikes_on_squares(double L, std::size_t n, double magnitude = 1.0) {
  std::vector<double> v(n, L);
  for (std::size_t k = 1; k * k <= n; ++k) v[k * k - 1] += magnitude;
  return SequencePrefix(std::move(v), L, std::abs(L) + magnitude);
}

SequencePrefix parity(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t t = 1; t <= n; ++t) v[t - 1] = t % 2 == 0 ? 1.0 : -1.0;
  return SequencePrefix(std::move(v), std::nullopt, 1.0);
}

SequencePrefix harmonic(double L, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t t = 1; t <= n; ++t) v[t - 1] = L + 1.0 / static_cast<double>(t);
  return SequencePrefix(std::move(v), L, std::abs(L) + 1.0);
}

ClassifierOptions at_xi(std::vector<double> xi) {
  ClassifierOptions o;
  o.xi = std::move(xi);
  return o;
}

}  // namespace

TEST_CASE("sequence prefix validation") {
  CHECK_THROWS_AS(SequencePrefix({}), UsageError);
  CHECK_THROWS_AS(SequencePrefix({1.0, NAN}), UsageError);
  const SequencePrefix x({1.0, -3.0, 2.0});
  CHECK(x.at(2) == -3.0);
  CHECK(x.sup_abs() == 3.0);
}

TEST_CASE("exceedance sets") {
  CHECK(exceedance_set(constant(2, 100), 2, 0.01).size() == 0);
  const auto sq = exceedance_set(spikes_on_squares(0, 1000), 0, 0.5);
  CHECK(sq == squares_set(1000));
  const auto h = exceedance_set(harmonic(1, 1000), 1, 0.01);
  CHECK(h.size() == 100);
  CHECK(h.contains(100));
  CHECK_FALSE(h.contains(101));
  // non-strict boundary: deviation exactly xi is included
  CHECK(exceedance_set(SequencePrefix({0.5, 0.25}), 0.0, 0.5).members() ==
        std::vector<std::size_t>{1});
  CHECK_THROWS_AS(exceedance_set(constant(0, 10), 0, 0.0), UsageError);
}

TEST_CASE("exceedance sets shrink as xi grows") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(2000);
  for (auto& x : v) x = g(rng);
  const SequencePrefix x(v);
  const double xis[] = {0.01, 0.05, 0.1, 0.5, 1.0, 2.0};
  for (std::size_t i = 0; i + 1 < std::size(xis); ++i) {
    const auto lo = exceedance_set(x, 0.0, xis[i]);
    const auto hi = exceedance_set(x, 0.0, xis[i + 1]);
    for (auto t : hi.members()) REQUIRE(lo.contains(t));
    const auto plo = f_lambda_density(lo, Modulus::identity(), LambdaSeq::sqrt(), 2000);
    const auto phi = f_lambda_density(hi, Modulus::identity(), LambdaSeq::sqrt(), 2000);
    for (std::size_t k = 0; k < plo.samples.size(); ++k) {
      REQUIRE(phi.samples[k].ratio <= plo.samples[k].ratio);
    }
  }
}

TEST_CASE("f_lambda statistical convergence examples") {
  const auto id = Modulus::identity();
  const auto full = LambdaSeq::full();
  CHECK(f_lambda_stat_convergent(constant(3, 1000), 3, id, full).status == Status::Holds);
  const auto x = spikes_on_squares(0, 100000);
  const auto r = f_lambda_stat_convergent(x, 0, id, full);
  CHECK(r.status == Status::Holds);
  CHECK(r.per_xi.size() == 5);
  const auto lg = f_lambda_stat_convergent(x, 0, Modulus::log1p(), full);
  CHECK(lg.status == Status::Fails);
  CHECK(std::abs(lg.worst_tail_ratio() - 0.5) < 0.03);
  CHECK_THROWS_AS(f_lambda_stat_convergent(x, 0, Modulus::bounded_rational(), full), UsageError);
  CHECK_THROWS_AS(f_lambda_stat_convergent(constant(1, 99), 1, id, full), UsageError);
}

TEST_CASE("f statistical convergence examples") {
  const auto id = Modulus::identity();
  CHECK(f_stat_convergent(constant(1, 500), 1, id).holds());
  CHECK(f_stat_convergent(spikes_on_squares(0, 100000), 0, id).holds());
  for (double L : {-1.0, 0.0, 0.3, 1.0}) {
    const auto r = f_stat_convergent(parity(10000), L, id, at_xi({0.9}));
    CHECK(r.status == Status::Fails);
  }
}

TEST_CASE("strong summability examples") {
  const auto id = Modulus::identity();
  const auto full = LambdaSeq::full();
  CHECK(strong_f_lambda_summable(constant(2, 200), 2, id, full).holds());
  CHECK(strong_f_lambda_summable(spikes_on_squares(0, 100000), 0, id, full).holds());

  const std::size_t h = 1000000;
  const auto x = spikes_on_squares(0, h);
  const auto lg = strong_f_lambda_summable(x, 0, Modulus::log1p(), full);
  CHECK(lg.status == Status::Fails);
  // brute-force s_n at the horizon
  double sum = 0.0;
  for (std::size_t t = 1; t <= h; ++t) sum += std::log1p(std::abs(x.at(t)));
  const double s_h = sum / std::log1p(static_cast<double>(h));
  REQUIRE(lg.summability);
  CHECK(lg.summability->last_ratio == doctest::Approx(s_h).epsilon(1e-12));

  CHECK(strong_lambda_summable(constant(2, 200), 2, full).holds());
  const auto hm = strong_lambda_summable(harmonic(1, 100000), 1, full);
  CHECK(hm.holds());
  double hn = 0.0;
  for (std::size_t t = 1; t <= 100000; ++t) hn += 1.0 / static_cast<double>(t);
  CHECK(hm.summability->last_ratio == doctest::Approx(hn / 100000.0).epsilon(1e-12));

  std::vector<double> ev(100000, 0.0);
  for (std::size_t t = 2; t <= ev.size(); t += 2) ev[t - 1] = 1.0;
  const auto half = strong_lambda_summable(SequencePrefix(ev), 0.0, full);
  CHECK(half.status == Status::Fails);
  CHECK(half.summability->value == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("windowed summability matches a brute-force window sum") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(1500);
  for (auto& x : v) x = u(rng);
  const SequencePrefix x(v);
  const auto m = Modulus::power(0.5);
  const auto s = LambdaSeq::sqrt();
  const auto r = strong_f_lambda_summable(x, 0.25, m, s);
  for (const auto& p : r.summability->samples) {
    double sum = 0.0;
    for (std::size_t t = 1; t <= p.n; ++t) {
      if (static_cast<double>(t) >= p.n - s(p.n) + 1.0) sum += m(std::abs(x.at(t) - 0.25));
    }
    REQUIRE(p.ratio == doctest::Approx(sum / m(s(p.n))).epsilon(1e-9));
  }
}

TEST_CASE("summability dominates the statistical ratio for identity") {
  // |x_t - L| >= xi on the exceedance set, so s_n >= xi * |A_xi ∩ I_n| / lambda_n
  std::vector<double> v(20000, 0.0);
  for (std::size_t t = 1; t <= v.size(); t += 3) v[t - 1] = 0.7;
  const SequencePrefix x(v);
  const auto s = LambdaSeq::affine(0.5);
  const auto strong = strong_lambda_summable(x, 0.0, s);
  const auto stat = f_lambda_stat_convergent(x, 0.0, Modulus::identity(), s, at_xi({0.5}));
  CHECK(stat.status == Status::Fails);
  const auto& a = strong.summability->samples;
  const auto& b = stat.per_xi[0].profile.samples;
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].ratio >= 0.5 * b[i].ratio - 1e-15);
}

TEST_CASE("cumulative average diagnostic") {
  const auto p = cumulative_lambda_average(harmonic(0, 1000), 0, LambdaSeq::full());
  double h = 0.0;
  for (int t = 1; t <= 1000; ++t) h += 1.0 / t;
  CHECK(p.last_ratio == doctest::Approx(h / 1000.0));
}

TEST_CASE("statistical Cauchy") {
  const auto id = Modulus::identity();
  const auto full = LambdaSeq::full();
  const auto c = f_lambda_stat_cauchy(constant(4, 500), id, full, 0.1);
  CHECK(c.status == Status::Holds);
  REQUIRE(c.witness_q);
  CHECK(*c.witness_q == 1);

  const auto x = spikes_on_squares(0, 100000);
  for (double xi : {1.0, 0.5, 0.01}) {
    const auto r = f_lambda_stat_cauchy(x, id, full, xi);
    CHECK(r.status == Status::Holds);
    REQUIRE(r.witness_q);
    CHECK_FALSE(oracle::is_square(*r.witness_q));
  }
  CHECK(f_lambda_stat_cauchy_all(x, id, full).status == Status::Holds);

  const auto p = f_lambda_stat_cauchy(parity(10000), id, full, 0.5);
  CHECK(p.status == Status::Fails);
  CHECK_FALSE(p.witness_q);
  CHECK(f_lambda_stat_cauchy_all(parity(10000), id, full).status == Status::Fails);
}

TEST_CASE("statistical limit estimate") {
  const auto id = Modulus::identity();
  const auto full = LambdaSeq::full();
  const auto c = estimate_stat_limit(constant(-2.5, 1000), id, full, 0.01);
  REQUIRE(c);
  CHECK(*c == -2.5);
  const auto s = estimate_stat_limit(spikes_on_squares(3, 100000), id, full, 0.1);
  REQUIRE(s);
  CHECK(std::abs(*s - 3.0) <= 0.05);
  CHECK_FALSE(estimate_stat_limit(parity(10000), id, full, 0.1));
  CHECK_THROWS_AS(estimate_stat_limit(constant(1, 50), id, full, 0.1), UsageError);
}
