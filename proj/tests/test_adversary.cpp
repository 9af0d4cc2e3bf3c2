#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "oir/adversary.hpp"
#include "oir/engine.hpp"
#include "oir/learner.hpp"
#include "oir/registry.hpp"
#include "oir/rng.hpp"

using namespace oir;

TEST_CASE("lower-bound probabilities") {
  std::set<std::pair<double, double>> seen;
  for (bool a : {false, true})
    for (bool b : {false, true}) {
      const auto p = lower_bound_probabilities(2, {a, b});
      seen.insert({p[0], p[1]});
    }
  const std::set<std::pair<double, double>> expect{{0.25, 0.5}, {0.25, 0.75}, {0.5, 0.5}, {0.5, 0.75}};
  CHECK(seen == expect);
  Rng rng(1, "test/lb");
  for (int i = 0; i < 50; ++i) {
    const std::size_t k = 1 + rng.below(12);
    std::vector<bool> w(k);
    for (std::size_t j = 0; j < k; ++j) w[j] = rng.bernoulli(0.5);
    const auto p = lower_bound_probabilities(k, w);
    for (std::size_t j = 0; j < k; ++j) {
      CHECK(p[j] >= 0.25);
      CHECK(p[j] <= 0.75);
      if (j) CHECK(p[j] >= p[j - 1]);
    }
  }
}

TEST_CASE("segments absorb the remainder") {
  CHECK(lower_bound_segment(1, 10, 3) == 1);
  CHECK(lower_bound_segment(3, 10, 3) == 1);
  CHECK(lower_bound_segment(4, 10, 3) == 2);
  CHECK(lower_bound_segment(9, 10, 3) == 3);
  CHECK(lower_bound_segment(10, 10, 3) == 3);
  CHECK(lower_bound_default_segments(1000) == 10);
  CHECK(lower_bound_default_segments(1) == 1);
}

TEST_CASE("lower-bound sequences are reproducible") {
  const auto a = lower_bound_sequence(100, {}, 7);
  const auto b = lower_bound_sequence(100, {}, 7);
  const auto c = lower_bound_sequence(100, {}, 8);
  CHECK(std::equal(a.labels.labels().begin(), a.labels.labels().end(), b.labels.labels().begin()));
  CHECK(!std::equal(a.labels.labels().begin(), a.labels.labels().end(), c.labels.labels().begin()));
  for (double y : a.labels.labels()) CHECK((y == 0.0 || y == 1.0));
  CHECK_THROWS(lower_bound_sequence(10, {std::size_t{3}, std::vector<bool>{true}}, 1));
}

TEST_CASE("killer sequences") {
  const auto z = gd_killer(3, KillerVariant::zeros);
  CHECK(std::vector<std::size_t>(z.order.indices().begin(), z.order.indices().end()) ==
        std::vector<std::size_t>{0, 1, 2});
  CHECK(z.labels[1] == 0.0);
  const auto o = gd_killer(3, KillerVariant::ones);
  CHECK(std::vector<std::size_t>(o.order.indices().begin(), o.order.indices().end()) ==
        std::vector<std::size_t>{2, 1, 0});
  CHECK(o.labels[0] == 1.0);
}

TEST_CASE("generators") {
  const auto r = random_isotonic(50, 3);
  CHECK(r.noise_free());
  CHECK(is_non_decreasing(r.labels()));
  const auto n0 = noisy_isotonic(50, 0.0, 3);
  CHECK(std::equal(r.labels().begin(), r.labels().end(), n0.labels().begin()));
  const auto n = noisy_isotonic(50, 0.2, 3);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(n[i] >= 0.0);
    CHECK(n[i] <= 1.0);
    CHECK(std::abs(n[i] - r[i]) <= 0.6 + 1e-12);
  }
  const auto o = random_order(30, 5);
  std::set<std::size_t> s(o.indices().begin(), o.indices().end());
  CHECK(s.size() == 30);
  CHECK(!std::is_sorted(o.indices().begin(), o.indices().end()));
}

TEST_CASE("midpoint splitter") {
  for (double p : {0.2, 0.5}) {
    ConstantLearner l(1, p);
    MidpointSplitter adv(1);
    const GameResult g = run_game(l, adv, LossKind::squared);
    CHECK(g.transcript[0].label == 1.0);
    CHECK(g.learner_loss >= 0.25);
  }
  ConstantLearner hi(1, 0.7);
  MidpointSplitter adv(1);
  CHECK(run_game(hi, adv, LossKind::squared).transcript[0].label == 0.0);

  for (double p : {0.1, 0.5, 0.9}) {
    ConstantLearner l(13, p);
    MidpointSplitter m(13);
    const GameResult g = run_game(l, m, LossKind::squared);
    CHECK(is_non_decreasing(labels_by_position(g.transcript)));
  }
}

TEST_CASE("greedy isotonic adversary forces alpha_T on any learner") {
  const auto alpha = minimax_alpha_table(30);
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    for (std::size_t t : {1, 5, 30}) {
      ConstantLearner l(t, p);
      GreedyIsotonicAdversary adv(t);
      const GameResult g = run_game(l, adv, LossKind::squared);
      CHECK(g.learner_loss >= alpha[t] - 1e-12);
      CHECK(is_non_decreasing(labels_by_position(g.transcript)));
    }
  }
}

TEST_CASE("optimal any-order adversary forces beta_T on any learner") {
  for (double p : {0.0, 0.4, 1.0}) {
    for (std::size_t t : {1, 6, 25}) {
      ConstantLearner l(t, p);
      OptimalAnyOrderAdversary adv(t);
      const GameResult g = run_game(l, adv, LossKind::squared);
      CHECK(g.learner_loss >= minimax_beta_table(t)[t] - 1e-12);
      CHECK(is_non_decreasing(labels_by_position(g.transcript)));
    }
  }
}

TEST_CASE("registry") {
  for (const auto& n : adversary_names()) {
    if (n == "fixed") continue;
    auto a = make_adversary(n, 8, 1);
    CHECK(a->horizon() == 8);
  }
  for (const auto& n : learner_names()) {
    auto l = make_learner(n, 8, default_loss(n));
    CHECK(l->horizon() == 8);
  }
  ComponentOptions o;
  o.labels = std::vector<double>{0.1, 0.5};
  CHECK(make_adversary("fixed", 2, 1, o)->noise_free());
  CHECK_THROWS(make_adversary("fixed", 3, 1, o));
  CHECK_THROWS(make_adversary("nope", 3, 1));
  CHECK_THROWS(make_learner("ogd", 3, LossKind::entropic));
  ComponentOptions order;
  order.order = "random";
  CHECK_THROWS(make_adversary("midpoint", 3, 1, order));
}
