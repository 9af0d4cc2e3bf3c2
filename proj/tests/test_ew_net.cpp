#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oir/ew_net.hpp"
#include "oir/rng.hpp"

using namespace oir;

TEST_CASE("grids") {
  CHECK(uniform_grid(2) == std::vector<double>{0, 0.5, 1});
  const auto g = ew_entropic_grid(2);
  CHECK(g[0] == doctest::Approx(0.146447).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(0.5));
  CHECK(g[2] == doctest::Approx(0.853553).epsilon(1e-6));
  for (std::size_t k : {2, 3, 7, 12}) {
    const auto z = ew_entropic_grid(k);
    for (std::size_t j = 0; j <= k; ++j) CHECK(z[j] + z[k - j] == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto one = ew_entropic_grid(1);
  CHECK(one[0] == doctest::Approx(0.5));
  CHECK(one[1] == doctest::Approx(0.5));
  CHECK_THROWS(EwNetLearner(5, LossKind::entropic, {1, {}, false}));
}

TEST_CASE("beta rows") {
  NetWeightsState s(3, uniform_grid(2), 0.5, LossKind::squared);
  s.observe(0, 0.0);
  const auto b = s.beta_row(0);
  // exp(-(1/2)(j/K)^2) for j/K in {0, 1/2, 1}.
  CHECK(b[0] == 1.0);
  CHECK(b[1] == doctest::Approx(std::exp(-0.125)).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  s.observe(1, 0.5);
  CHECK(s.beta_row(1)[1] == 1.0);
  CHECK_THROWS(s.observe(1, 0.5));
  CHECK_THROWS(s.predict(1));

  const auto z = ew_entropic_grid(4);
  NetWeightsState e(2, z, 1.0, LossKind::entropic);
  e.observe(0, z[1]);
  CHECK(e.beta_row(0)[1] ==
        doctest::Approx(std::pow(z[1], z[1]) * std::pow(1 - z[1], 1 - z[1])).epsilon(1e-13));
}

TEST_CASE("hand-computed predictions") {
  EwNetLearner one(1, LossKind::squared, {1, {}, false});
  CHECK(one.predict(0) == doctest::Approx(0.5));
  EwNetLearner mid(5, LossKind::squared, {3, {}, false});
  CHECK(mid.predict(2) == doctest::Approx(0.5).epsilon(1e-14));

  const double e = std::exp(-0.5);
  EwNetLearner a(2, LossKind::squared, {1, {}, false});
  a.observe(0, 0.0);
  // Members 00, 01, 11 with weights 1, 1, e^{-1/2}.
  CHECK(a.predict(1) == doctest::Approx((1 + e) / (2 + e)).epsilon(1e-14));
  EwNetLearner b(2, LossKind::squared, {1, {}, false});
  b.observe(0, 1.0);
  CHECK(b.predict(1) == doctest::Approx((e + 1) / (2 * e + 1)).epsilon(1e-14));

  NaiveEwNetLearner n(1, LossKind::squared, 2);
  CHECK(n.predict(0) == doctest::Approx(0.5));
}

TEST_CASE("backward counts on a fresh state") {
  // T = 3, K = 2: completions of the two points after position 0 number
  // C(4,2) = 6, C(3,1) = 3, C(2,0) = 1 from levels 0, 1, 2.
  NetWeightsState s(3, uniform_grid(2), 0.5, LossKind::squared);
  const NetMarginal m = s.marginal_isotonic_fast(0);
  CHECK(m.level_weights[0] == doctest::Approx(0.6));
  CHECK(m.level_weights[1] == doctest::Approx(0.3));
  CHECK(m.level_weights[2] == doctest::Approx(0.1));
  CHECK(m.log_mass == doctest::Approx(std::log(10.0)));
  const NetMarginal slow = s.marginal(0);
  for (int k = 0; k < 3; ++k) CHECK(slow.level_weights[k] == doctest::Approx(m.level_weights[k]));
}

TEST_CASE("DP matches enumeration on random games") {
  Rng rng(8, "test/dp");
  for (int g = 0; g < 120; ++g) {
    const LossKind kind = g % 2 ? LossKind::entropic : LossKind::squared;
    const std::size_t t_max = 1 + rng.below(6);
    const std::size_t k = kind == LossKind::entropic ? 2 + rng.below(2) : 1 + rng.below(3);
    EwNetLearner dp(t_max, kind, {k, {}, false});
    NaiveEwNetLearner naive(t_max, kind, k);
    for (std::size_t i : rng.permutation(t_max)) {
      const double a = dp.predict(i), b = naive.predict(i);
      CHECK(std::abs(a - b) <= 1e-9 * std::max(a, b));
      const double y = rng.uniform();
      dp.observe(i, y);
      naive.observe(i, y);
    }
  }
}

TEST_CASE("fast path matches the general path and costs O(K) per round") {
  Rng rng(9, "test/fast");
  for (std::size_t horizon : {4, 60, 200}) {
    for (std::size_t k : {2, 5, 10}) {
      NetWeightsState slow(horizon, uniform_grid(k), 0.5, LossKind::squared);
      NetWeightsState fast(horizon, uniform_grid(k), 0.5, LossKind::squared);
      for (std::size_t t = 0; t < horizon; ++t) {
        CHECK(std::abs(slow.predict(t) - fast.predict_isotonic_fast(t)) <= 1e-10);
        CHECK(fast.last_fast_operations() == (t ? 3 * k + 2 : 2 * k + 1));
        const double y = rng.uniform();
        slow.observe(t, y);
        fast.observe(t, y);
      }
    }
  }
  NetWeightsState s(4, uniform_grid(2), 0.5, LossKind::squared);
  s.observe(1, 0.3);
  CHECK_THROWS_AS(s.predict_isotonic_fast(0), std::logic_error);
}

TEST_CASE("numerics survive long horizons") {
  EwNetLearner l(4000, LossKind::squared, {{}, {}, true});
  for (std::size_t t = 0; t < 4000; ++t) {
    const double p = l.predict(t);
    CHECK(std::isfinite(p));
    l.observe(t, t % 3 ? 1.0 : 0.0);
  }
}

TEST_CASE("regret bounds") {
  const double t = 1000, l = std::log(t + 1);
  CHECK(ew_net_squared_bound(1000) ==
        doctest::Approx(3 / std::pow(2, 2.0 / 3) * std::cbrt(t) * std::pow(l, 2.0 / 3) + 2 * l));
  const double c = 3 * std::cbrt(2 - std::numbers::sqrt2) * std::pow(std::numbers::pi, 2.0 / 3) /
                   std::pow(2, 2.0 / 3);
  CHECK(ew_net_entropic_bound(1000) == doctest::Approx(c * std::cbrt(t) * std::pow(l, 2.0 / 3) + 2 * l));
  CHECK(*EwNetLearner(1000, LossKind::squared).regret_bound() == doctest::Approx(ew_net_squared_bound(1000)));
  const double general = 2 * log_binomial(1007, 7) + 1000.0 / (4 * 49);
  CHECK(*EwNetLearner(1000, LossKind::squared, {7, {}, false}).regret_bound() == doctest::Approx(general));
  CHECK(!EwNetLearner(1000, LossKind::squared, {{}, 0.1, false}).regret_bound());
  CHECK(EwNetLearner(64, LossKind::squared, {{}, {}, true}).name() == "ew-net-fast");
  CHECK(EwNetLearner(64, LossKind::entropic).name() == "ew-entropic");
}

TEST_CASE("enumeration refuses large nets") {
  const auto g = uniform_grid(10);
  CHECK_THROWS(ew_net_naive_predict(g, 0.5, LossKind::squared, 200, {}, 0));
}
