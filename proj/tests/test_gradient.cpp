#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oir/adversary.hpp"
#include "oir/engine.hpp"
#include "oir/gradient.hpp"
#include "oir/isotonic.hpp"
#include "oir/rng.hpp"

using namespace oir;

TEST_CASE("eg prefix-sum predictions") {
  const std::vector<double> p(4, 0.25);
  CHECK(eg_step(p, 1, 0.0, 0.3).prediction == doctest::Approx(0.5));
  CHECK(eg_step(p, 2, 0.0, 0.3).prediction == doctest::Approx(0.75));
  const EgStep still = eg_step(p, 1, 1.0, 0.0);
  CHECK(still.weights == p);
  CHECK_THROWS(eg_step(std::vector<double>{0.5, 0.3}, 0, 0.0, 0.1));
  CHECK_THROWS(eg_step(p, 0, 0.0, 0.1, LossKind::entropic));
}

TEST_CASE("eg update moves mass the right way and stays normalised") {
  const std::vector<double> p(5, 0.2);
  const EgStep s = eg_step(p, 1, 0.0, 0.5);
  CHECK(std::accumulate(s.weights.begin(), s.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  double after = s.weights[0] + s.weights[1];
  CHECK(after < 0.4);
  // Multiplicative form: the first two coordinates share one factor.
  CHECK(s.weights[0] == doctest::Approx(s.weights[1]));
  CHECK(s.weights[2] == doctest::Approx(s.weights[4]));
}

TEST_CASE("eg tuning") {
  const double t = 100, l = std::log(101.0);
  CHECK(eg_default_eta_squared(100) == doctest::Approx(2 * std::sqrt(l) / (std::sqrt(t / 2) + std::sqrt(l))));
  CHECK(eg_squared_bound(100) == doctest::Approx(std::sqrt(t * l / 2) + l / 2));
  CHECK(eg_default_eta_absolute(100) == doctest::Approx(std::sqrt(8 * l / t)));
  CHECK(eg_absolute_bound(100) == doctest::Approx(std::sqrt(t * l / 2)));
  CHECK(EgLearner(100, LossKind::squared).regret_bound());
  CHECK(!EgLearner(100, LossKind::squared, 0.3).regret_bound());
}

TEST_CASE("eg with eta 0 keeps static predictions") {
  EgLearner l(3, LossKind::squared, 0.0);
  CHECK(l.predict(2) == doctest::Approx(0.75));
  l.observe(2, 0.0);
  CHECK(l.predict(0) == doctest::Approx(0.25));
}

TEST_CASE("ogd single step") {
  const OgdStep s = ogd_step(IsotonicFunction({0.5, 0.5}), 0, 0.0, 0.25);
  CHECK(s.prediction == 0.5);
  CHECK(s.function[0] == doctest::Approx(0.25));
  CHECK(s.function[1] == doctest::Approx(0.5));
}

TEST_CASE("ogd with eta 0 never moves") {
  Rng rng(3, "test/ogd0");
  const IsotonicFunction init = IsotonicFunction::diagonal(20);
  OgdLearner l(init, 0.0);
  const LabelSequence labels = random_isotonic(20, 4);
  ObliviousAdversary adv({labels, random_order(20, 4)}, "r");
  const GameResult r = run_game(l, adv, LossKind::squared);
  double expect = 0;
  for (std::size_t i = 0; i < 20; ++i) expect += loss(LossKind::squared, labels[i], init[i]);
  CHECK(r.learner_loss == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("ogd on the killer sequence loses sum f_init^2") {
  for (std::size_t t : {10, 100}) {
    for (double eta : {0.1, 0.5, 1.0}) {
      OgdLearner l(IsotonicFunction::diagonal(t), eta);
      ObliviousAdversary adv(gd_killer(t, KillerVariant::zeros), "k");
      const GameResult r = run_game(l, adv, LossKind::squared);
      const double td = static_cast<double>(t);
      CHECK(r.learner_loss == doctest::Approx((td + 1) * (2 * td + 1) / (6 * td)).epsilon(1e-12));
      CHECK(r.oracle_loss == 0.0);
    }
  }
}

TEST_CASE("ftrl closed forms") {
  const IsotonicFunction f0({0.5, 0.5});
  CHECK(ftrl_predict(f0, 1.0, {})[0] == 0.5);
  const std::vector<std::pair<std::size_t, double>> h{{0, 1.0}};
  const IsotonicFunction f = ftrl_predict(f0, 1.0, h);
  CHECK(f[0] == doctest::Approx(2.0 / 3));
  CHECK(f[1] == doctest::Approx(2.0 / 3));
}

TEST_CASE("ftrl constraints stay inactive on the killer sequence") {
  for (double lambda : {0.1, 1.0, 10.0}) {
    const std::size_t t = 50;
    const IsotonicFunction f0 = IsotonicFunction::diagonal(t);
    FtrlLearner l(f0, lambda);
    for (std::size_t i = 0; i < t; ++i) {
      CHECK(l.predict(i) == doctest::Approx(f0[i]).epsilon(1e-12));
      l.observe(i, 0.0);
    }
  }
}

TEST_CASE("ftrl solution matches a grid search") {
  Rng rng(5, "test/ftrl");
  const IsotonicFunction f0({0.2, 0.4, 0.9});
  for (int g = 0; g < 10; ++g) {
    const double lambda = 0.5 + rng.uniform();
    std::vector<std::pair<std::size_t, double>> h{{0, rng.uniform()}, {2, rng.uniform()}};
    const IsotonicFunction f = ftrl_predict(f0, lambda, h);
    auto obj = [&](const std::vector<double>& v) {
      double s = 0;
      for (int i = 0; i < 3; ++i) s += lambda * (v[i] - f0[i]) * (v[i] - f0[i]);
      for (auto [i, y] : h) s += (v[i] - y) * (v[i] - y);
      return s;
    };
    const double star = obj({f[0], f[1], f[2]});
    double best = 1e300;
    for (int a = 0; a <= 50; ++a)
      for (int b = a; b <= 50; ++b)
        for (int c = b; c <= 50; ++c) best = std::min(best, obj({a / 50.0, b / 50.0, c / 50.0}));
    CHECK(star <= best + 1e-12);
  }
}
