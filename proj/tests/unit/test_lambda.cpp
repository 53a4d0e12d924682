#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "modstat/error.hpp"
#include "modstat/lambda.hpp"
#include "support/oracles.hpp"

using namespace modstat;

TEST_CASE("lambda values") {
  CHECK(LambdaSeq::full()(7) == 7.0);
  CHECK(LambdaSeq::sqrt()(100) == 10.0);
  CHECK(LambdaSeq::affine(0.5)(1) == 1.0);
  CHECK(LambdaSeq::affine(0.5)(5) == 3.0);
  CHECK(LambdaSeq::log_grow()(1) == 1.0);
  CHECK(LambdaSeq::log_grow()(100) == doctest::Approx(1.0 + std::log(100.0)));
  CHECK_THROWS_AS(LambdaSeq::full()(0), DomainError);
}

TEST_CASE("lambda names") {
  CHECK(LambdaSeq::parse("full").kind() == LambdaKind::Full);
  CHECK(LambdaSeq::parse("affine:0.5")(3) == 2.0);
  CHECK(LambdaSeq::parse("sqrt").kind() == LambdaKind::Sqrt);
  CHECK(LambdaSeq::parse("loggrow").kind() == LambdaKind::LogGrow);
  CHECK_THROWS_AS(LambdaSeq::parse("affine:2"), UsageError);
  CHECK_THROWS_AS(LambdaSeq::parse("affine:0"), UsageError);
  CHECK_THROWS_AS(LambdaSeq::parse("cubic"), UsageError);
}

TEST_CASE("class validation") {
  const auto full = validate_lambda(LambdaSeq::full(), 100000);
  CHECK(full.all_passed());
  CHECK(full.growth_evidence == 100000.0);
  CHECK(validate_lambda(LambdaSeq::sqrt(), 100000).all_passed());
  CHECK(validate_lambda(LambdaSeq::log_grow(), 100000).all_passed());
  CHECK(validate_lambda(LambdaSeq::affine(0.3), 100000).all_passed());

  const auto twice = LambdaSeq::pluggable([](std::size_t n) { return 2.0 * n; }, "2n");
  const auto r = validate_lambda(twice, 100);
  CHECK_FALSE(r.first_is_one);
  CHECK_FALSE(r.slow_growth);
  CHECK(r.slow_growth_violation == 1);

  const auto dip = LambdaSeq::pluggable(
      [](std::size_t n) { return n == 5 ? 3.0 : std::min<double>(n, 4.0); }, "dip");
  const auto d = validate_lambda(dip, 10);
  CHECK_FALSE(d.nondecreasing);
  CHECK(d.nondecreasing_violation == 4);
  CHECK_THROWS_AS(validate_lambda(LambdaSeq::full(), 1), UsageError);
}

TEST_CASE("window examples") {
  const auto f = window(LambdaSeq::full(), 10);
  CHECK(f.start == 1);
  CHECK(f.end == 10);
  CHECK(f.count == 10);
  const auto s = window(LambdaSeq::sqrt(), 100);
  CHECK(s.start == 91);
  CHECK(s.end == 100);
  CHECK(s.count == 10);
  for (const auto& seq : {LambdaSeq::full(), LambdaSeq::sqrt(), LambdaSeq::affine(0.2),
                          LambdaSeq::log_grow()}) {
    const auto w = window(seq, 1);
    CHECK(w.start == 1);
    CHECK(w.count == 1);
  }
}

TEST_CASE("window counts match enumeration for n <= 1e4") {
  for (const auto& seq : {LambdaSeq::full(), LambdaSeq::sqrt(), LambdaSeq::affine(0.5),
                          LambdaSeq::affine(0.37), LambdaSeq::log_grow()}) {
    CAPTURE(seq.name());
    const auto sched = WindowSchedule::for_lambda(seq, 10000);
    for (std::size_t n = 1; n <= 10000; n += (n < 500 ? 1 : 7)) {
      const auto w = window(seq, n);
      REQUIRE(w.count == oracle::window_count(seq(n), n));
      REQUIRE(w.end == n);
      REQUIRE(w.count == w.end - w.start + 1);
      REQUIRE(sched.start(n) == w.start);
      REQUIRE(sched.length(n) == seq(n));
    }
  }
}

TEST_CASE("dominated lambda gives nested windows") {
  const auto a = LambdaSeq::sqrt();
  const auto b = LambdaSeq::affine(0.5);
  const auto c = LambdaSeq::full();
  for (std::size_t n = 1; n <= 20000; ++n) {
    REQUIRE(window(a, n).start >= window(b, n).start);
    REQUIRE(window(b, n).start >= window(c, n).start);
  }
}

TEST_CASE("cumulative schedule") {
  const auto w = WindowSchedule::cumulative(50);
  CHECK(w.start(50) == 1);
  CHECK(w.length(50) == 50.0);
}

TEST_CASE("ratio liminf") {
  const auto half = ratio_liminf(LambdaSeq::affine(0.5), LambdaSeq::full(), 100000);
  CHECK(half.hypothesis_met);
  CHECK(half.estimate == doctest::Approx(0.5).epsilon(1e-4));
  const auto same = ratio_liminf(LambdaSeq::full(), LambdaSeq::full(), 100000);
  CHECK(same.hypothesis_met);
  CHECK(same.estimate == 1.0);
  const auto root = ratio_liminf(LambdaSeq::sqrt(), LambdaSeq::full(), 100000);
  CHECK_FALSE(root.hypothesis_met);
  CHECK(root.estimate == doctest::Approx(1.0 / std::sqrt(100000.0)));
  CHECK_THROWS_AS(ratio_liminf(LambdaSeq::full(), LambdaSeq::full(), 999), UsageError);
}

TEST_CASE("n over f(lambda_n)") {
  const auto id = ratio_n_over_f_lambda(Modulus::identity(), LambdaSeq::full(), 100000);
  CHECK(id.liminf_estimate == 1.0);
  CHECK(id.liminf_positive);
  CHECK(id.lim_is_one);
  const auto lg = ratio_n_over_f_lambda(Modulus::log1p(), LambdaSeq::full(), 100000);
  CHECK(lg.liminf_estimate > 1.0);
  CHECK(lg.liminf_positive);
  CHECK_FALSE(lg.lim_is_one);
  const auto sq = ratio_n_over_f_lambda(Modulus::identity(), LambdaSeq::sqrt(), 100000);
  CHECK(sq.liminf_positive);
  CHECK_FALSE(sq.lim_is_one);
  const auto af = ratio_n_over_f_lambda(Modulus::identity(), LambdaSeq::affine(0.5), 100000);
  CHECK(af.liminf_estimate == doctest::Approx(2.0).epsilon(1e-4));
  CHECK_FALSE(af.lim_is_one);
  CHECK_THROWS_AS(
      ratio_n_over_f_lambda(Modulus::bounded_rational(), LambdaSeq::full(), 1000), UsageError);
}

TEST_CASE("ratio tends to one and domination") {
  CHECK(ratio_tends_to_one(LambdaSeq::full(), LambdaSeq::full(), 10000));
  CHECK_FALSE(ratio_tends_to_one(LambdaSeq::affine(0.5), LambdaSeq::full(), 10000));
  CHECK_FALSE(domination_violation(LambdaSeq::sqrt(), LambdaSeq::full(), 10000));
  const auto v = domination_violation(LambdaSeq::full(), LambdaSeq::affine(0.5), 10000);
  REQUIRE(v);
  CHECK(*v == 2);
}
