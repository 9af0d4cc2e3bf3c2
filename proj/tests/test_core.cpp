#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oir/core.hpp"
#include "oracles.hpp"

using namespace oir;

TEST_CASE("loss values") {
  CHECK(loss(LossKind::squared, 1.0, 0.5) == doctest::Approx(0.25));
  CHECK(loss(LossKind::absolute, 0.3, 0.3) == 0.0);
  CHECK(loss(LossKind::entropic, 0.5, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(loss(LossKind::entropic, 0.0, 0.0) == 0.0);
  CHECK(loss(LossKind::entropic, 1.0, 1.0) == 0.0);
  CHECK_THROWS_AS(loss(LossKind::entropic, 0.5, 0.0), InfiniteLossError);
  CHECK_THROWS_AS(loss(LossKind::entropic, 1.0, 0.0), InfiniteLossError);
  CHECK_THROWS_AS(loss(LossKind::squared, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("loss symmetry under complementation") {
  for (double y : {0.0, 0.1, 0.5, 0.8, 1.0}) {
    for (double p : {0.05, 0.3, 0.5, 0.99}) {
      for (LossKind k : {LossKind::squared, LossKind::absolute, LossKind::entropic}) {
        CHECK(loss(k, y, p) == doctest::Approx(loss(k, 1 - y, 1 - p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("loss gradient") {
  CHECK(loss_gradient(LossKind::squared, 0.0, 0.5) == doctest::Approx(1.0));
  CHECK(loss_gradient(LossKind::absolute, 0.3, 0.3) == 0.0);
  CHECK(loss_gradient(LossKind::absolute, 0.3, 0.5) == 1.0);
  CHECK(loss_gradient(LossKind::absolute, 0.3, 0.1) == -1.0);
  const double h = 1e-6;
  const double num = (loss(LossKind::entropic, 0.3, 0.6 + h) - loss(LossKind::entropic, 0.3, 0.6 - h)) / (2 * h);
  CHECK(loss_gradient(LossKind::entropic, 0.3, 0.6) == doctest::Approx(num).epsilon(1e-6));
}

TEST_CASE("loss kind names") {
  CHECK(parse_loss_kind("entropic") == LossKind::entropic);
  CHECK(to_string(LossKind::absolute) == "absolute");
  CHECK_THROWS(parse_loss_kind("hinge"));
}

TEST_CASE("value types validate their invariants") {
  CHECK_THROWS(IsotonicFunction({0.5, 0.2}));
  CHECK_THROWS(IsotonicFunction({-0.1, 0.2}));
  CHECK(IsotonicFunction::diagonal(4)[0] == 0.25);
  CHECK(IsotonicFunction::diagonal(4)[3] == 1.0);
  CHECK_THROWS(RevealOrder({0, 0, 1}));
  CHECK_THROWS(RevealOrder({0, 3}));
  CHECK(RevealOrder::antitonic(3)[0] == 2);
  CHECK_THROWS(LabelSequence({0.6, 0.2}, true));
  CHECK_NOTHROW(LabelSequence({0.6, 0.2}, false));
  CHECK_THROWS(LabelSequence({1.2}));
}

TEST_CASE("covering net size") {
  CHECK(covering_net_size(3, 1) == 4);
  CHECK(covering_net_size(7, 0) == 1);
  CHECK(covering_net_size(2, 2) == 6);
  for (std::size_t t = 1; t <= 5; ++t) {
    for (std::size_t k = 1; k <= 3; ++k) {
      CHECK(covering_net_size(t, k) == oracle::count_isotonic(t, k + 1));
    }
  }
  CHECK(covering_net_size(4096, 5) == binomial(4101, 5));
  CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-12));
  CHECK(binomial(100, 50).str() == "100891344545564193334812497256");
}

TEST_CASE("grid tuning") {
  CHECK(tune_k_squared(1000) == 4);
  CHECK(tune_k_squared(1) == 1);
  // (8 / (4 ln 9))^(1/3) = 0.9655..., so the ceiling is 1.
  CHECK(tune_k_squared(8) == 1);
  CHECK(tune_k_entropic(1) == 3);
  CHECK(tune_k_entropic(1000) == 12);
  std::size_t prev = tune_k_entropic(3);
  for (std::size_t t = 4; t <= 10000; ++t) {
    const std::size_t k = tune_k_entropic(t);
    CHECK(k >= prev);
    prev = k;
  }
}
