#include <cmath>

#include "doctest.h"
#include "modstat/decompose.hpp"
#include "modstat/error.hpp"
#include "support/oracles.hpp"

using namespace modstat;

namespace {

SequencePrefix spikes_on_squares(double L, std::size_t n) {
  std::vector<double> v(n, L);
  for (std::size_t k = 1; k * k <= n; ++k) v[k * k - 1] += 1.0;
  return SequencePrefix(std::move(v), L, std::abs(L) + 1.0);
}

// N_d straight from the definition: smallest N with ratio_n < 1/d for all n in (N, h],
// pushed past N_{d-1}.
std::vector<std::size_t> thresholds_oracle(const SequencePrefix& x, double L,
                                           const LambdaSeq& s, std::size_t d_max) {
  const std::size_t h = x.size();
  std::vector<std::size_t> out{0};
  for (std::size_t d = 1; d <= d_max; ++d) {
    const double level = 1.0 / static_cast<double>(d);
    std::size_t nd = 0;
    for (std::size_t n = 1; n <= h; ++n) {
      const auto cnt = oracle::windowed_count(
          [&](std::size_t t) { return std::abs(x.at(t) - L) >= level; }, s(n), n);
      if (static_cast<double>(cnt) / s(n) >= level) nd = n;
    }
    nd = std::max(nd, out.back() + 1);
    if (nd >= h) break;
    out.push_back(nd);
  }
  return out;
}

}  // namespace

TEST_CASE("thresholds for a constant are minimal") {
  const SequencePrefix x(std::vector<double>(500, 1.0), 1.0, 1.0);
  const auto th = thresholds(x, 1.0, Modulus::identity(), LambdaSeq::full());
  CHECK(th.levels == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8});
  CHECK_FALSE(th.truncated);
}

TEST_CASE("thresholds on spikes match the definition") {
  const auto x = spikes_on_squares(0, 3000);
  for (const auto& s : {LambdaSeq::full(), LambdaSeq::sqrt(), LambdaSeq::affine(0.5)}) {
    CAPTURE(s.name());
    ThresholdOptions o;
    o.d_max = 4;
    o.require_holds = s.kind() != LambdaKind::Sqrt;
    const auto th = thresholds(x, 0.0, Modulus::identity(), s, o);
    CHECK(th.levels == thresholds_oracle(x, 0.0, s, 4));
    CHECK_FALSE(th.truncated);
  }
}

TEST_CASE("threshold preconditions") {
  const auto x = spikes_on_squares(0, 100000);
  CHECK_THROWS_AS(thresholds(x, 0.0, Modulus::log1p(), LambdaSeq::full()), PreconditionFailed);
  ThresholdOptions loose;
  loose.require_holds = false;
  const auto th = thresholds(x, 0.0, Modulus::log1p(), LambdaSeq::full(), loose);
  CHECK(th.truncated);
  CHECK(th.failed_level == 2);
  CHECK(th.depth() == 1);
  // nothing below level 1 either: every index deviates by 5
  const SequencePrefix far(std::vector<double>(200, 5.0));
  CHECK_THROWS_AS(thresholds(far, 0.0, Modulus::identity(), LambdaSeq::full(), loose),
                  ConstructionFailed);
}

TEST_CASE("decomposition follows the case split") {
  const auto x = spikes_on_squares(0, 100000);
  const auto th = thresholds(x, 0.0, Modulus::identity(), LambdaSeq::full());
  const auto dec = decompose(x, 0.0, th);
  // independent re-derivation of y and z
  std::size_t d = 0;
  for (std::size_t t = 1; t <= x.size(); ++t) {
    while (d + 1 < th.levels.size() && t > th.levels[d + 1]) ++d;
    const bool keep = d == 0 || std::abs(x.at(t)) < 1.0 / static_cast<double>(d);
    REQUIRE(dec.y[t - 1] == (keep ? x.at(t) : 0.0));
    REQUIRE(dec.z[t - 1] == (keep ? 0.0 : x.at(t)));
    REQUIRE(x.at(t) == dec.y[t - 1] + dec.z[t - 1]);
  }
  // z lives on late squares only
  for (auto t : dec.support().members()) {
    CHECK(oracle::is_square(t));
    CHECK(t > th.levels[1]);
  }
  const auto v = verify_decomposition(x, dec, Modulus::identity(), LambdaSeq::full());
  CHECK(v.all_passed());
  CHECK(v.max_reconstruction_error < 1e-12);
  CHECK(v.support_profile.verdict == Verdict::Zero);
  CHECK(v.failures.empty());
}

TEST_CASE("constant decomposes to itself") {
  const SequencePrefix x(std::vector<double>(300, 2.0), 2.0, 2.0);
  const auto th = thresholds(x, 2.0, Modulus::identity(), LambdaSeq::full());
  const auto dec = decompose(x, 2.0, th);
  CHECK(dec.y == x.values());
  CHECK(dec.support().size() == 0);
  CHECK(verify_decomposition(x, dec, Modulus::identity(), LambdaSeq::full()).all_passed());
}

TEST_CASE("small deviations give z identically zero") {
  std::vector<double> v(1000);
  for (std::size_t t = 1; t <= v.size(); ++t) v[t - 1] = 0.9 / static_cast<double>(t);
  const SequencePrefix x(v, 0.0, 1.0);
  Thresholds th;
  th.levels = {0, 1};
  const auto dec = decompose(x, 0.0, th);
  CHECK(dec.support().size() == 0);
}

TEST_CASE("adversarial decomposition fails the null-support check") {
  const std::size_t n = 2000;
  const SequencePrefix x(std::vector<double>(n, 1.0), 1.0, 1.0);
  Decomposition dec;
  dec.limit = 1.0;
  dec.thresholds.levels = {0, 1};
  dec.y.assign(n, 1.0);
  dec.z.assign(n, 0.0);
  for (std::size_t t = 2; t <= n; t += 2) {
    dec.y[t - 1] = 0.5;
    dec.z[t - 1] = 0.5;
  }
  const auto v = verify_decomposition(x, dec, Modulus::identity(), LambdaSeq::full());
  CHECK(v.reconstruction);
  CHECK_FALSE(v.support_null);
  CHECK_FALSE(v.all_passed());
  CHECK_FALSE(v.failures.empty());
}

TEST_CASE("broken reconstruction and slow y are reported") {
  const SequencePrefix x(std::vector<double>(200, 0.0), 0.0, 0.0);
  Decomposition dec;
  dec.thresholds.levels = {0, 1, 2};
  dec.y.assign(200, 0.0);
  dec.z.assign(200, 0.0);
  dec.y[150] = 0.75;  // 0.75 >= 1/2 beyond N_2
  dec.z[150] = -0.75;
  const auto v = verify_decomposition(x, dec, Modulus::identity(), LambdaSeq::full());
  CHECK(v.reconstruction);
  CHECK_FALSE(v.y_converges);
  CHECK(v.convergence_failed_level == 2);
  dec.z[150] = 0.0;
  CHECK_FALSE(verify_decomposition(x, dec, Modulus::identity(), LambdaSeq::full()).reconstruction);
}

TEST_CASE("exceptional set") {
  const auto id = Modulus::identity();
  const auto full = LambdaSeq::full();
  SUBCASE("constant") {
    const SequencePrefix x(std::vector<double>(400, 1.0), 1.0, 1.0);
    const auto es = exceptional_set(x, 1.0, id, full);
    CHECK(es.t.size() == 0);
    CHECK(verify_off_t_convergence(x, 1.0, es).passed);
  }
  SUBCASE("spikes") {
    const auto x = spikes_on_squares(0, 100000);
    const auto es = exceptional_set(x, 0.0, id, full);
    CHECK(es.density_profile.verdict == Verdict::Zero);
    for (auto t : es.t.members()) REQUIRE(oracle::is_square(t));
    for (std::size_t i = 1; i < es.anchors.size(); ++i) CHECK(es.anchors[i] > es.anchors[i - 1]);
    // T is exactly the union of stage pieces
    std::vector<std::size_t> expect;
    for (std::size_t z = 0; z < es.anchors.size(); ++z) {
      const std::size_t hi = z + 1 < es.anchors.size() ? es.anchors[z + 1] : x.size() + 1;
      for (std::size_t t = es.anchors[z]; t < hi; ++t) {
        if (std::abs(x.at(t)) > 1.0 / static_cast<double>(z + 1)) expect.push_back(t);
      }
    }
    CHECK(es.t.members() == expect);
    CHECK(verify_off_t_convergence(x, 0.0, es).passed);

    auto empty = es;
    empty.t = IndexSet::empty(x.size());
    const auto bad = verify_off_t_convergence(x, 0.0, empty);
    CHECK_FALSE(bad.passed);
    CHECK(oracle::is_square(bad.witness_t));
    CHECK(bad.deviation == 1.0);
  }
  SUBCASE("single stage") {
    const auto x = spikes_on_squares(0, 5000);
    const auto es = exceptional_set(x, 0.0, id, full, 1);
    REQUIRE(es.anchors.size() == 1);
    std::vector<std::size_t> expect;
    for (std::size_t t = es.anchors[0]; t <= x.size(); ++t) {
      if (std::abs(x.at(t)) > 1.0) expect.push_back(t);
    }
    CHECK(es.t.members() == expect);
  }
  SUBCASE("anchor missing") {
    // density 1/2 stays under 1/z for z = 1, 2
    std::vector<double> v(1000, 0.0);
    for (std::size_t t = 2; t <= v.size(); t += 2) v[t - 1] = 3.0;
    CHECK_THROWS_WITH_AS(exceptional_set(SequencePrefix(v), 0.0, id, full),
                         doctest::Contains("z = 3"), ConstructionFailed);
  }
}
