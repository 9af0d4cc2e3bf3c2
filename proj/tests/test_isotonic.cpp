#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oir/isotonic.hpp"
#include "oir/rng.hpp"
#include "oracles.hpp"

using namespace oir;

namespace {
std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }
}  // namespace

TEST_CASE("pava examples") {
  const std::vector<double> a{1, 0};
  CHECK(pava(a).fit == std::vector<double>{0.5, 0.5});
  const std::vector<double> b{0, 1};
  CHECK(pava(b).fit == std::vector<double>{0, 1});
  const std::vector<double> c{1, 0, 1};
  CHECK(pava(c).fit == std::vector<double>{0.5, 0.5, 1});
  CHECK(pava(c).level_sets.size() == 2);
  CHECK_THROWS(pava(std::vector<double>{}));
  const std::vector<double> w{1, 0};
  CHECK_THROWS(pava(a, w));
}

TEST_CASE("best isotonic loss examples") {
  const std::vector<double> y{0, 1, 0, 1};
  CHECK(vec(pava(y).clipped().values()) == std::vector<double>{0, 0.5, 0.5, 1});
  CHECK(best_isotonic_loss(y, LossKind::squared) == doctest::Approx(0.5));
  const std::vector<double> iso{0.1, 0.4, 0.4, 0.9};
  CHECK(best_isotonic_loss(iso, LossKind::squared) == 0.0);
  CHECK(best_isotonic_loss(iso, LossKind::absolute) == 0.0);
  const std::vector<double> e{0.25, 0.75};
  const double entropy = loss(LossKind::entropic, 0.25, 0.25) + loss(LossKind::entropic, 0.75, 0.75);
  CHECK(best_isotonic_loss(e, LossKind::entropic) == doctest::Approx(entropy).epsilon(1e-14));
}

TEST_CASE("l1 isotonic examples") {
  CHECK(vec(l1_isotonic(std::vector<double>{1, 0, 0}).values()) == std::vector<double>{0, 0, 0});
  CHECK(vec(l1_isotonic(std::vector<double>{0, 1}).values()) == std::vector<double>{0, 1});
  CHECK(vec(l1_isotonic(std::vector<double>{1, 0}).values()) == std::vector<double>{0, 0});
}

TEST_CASE("projection examples") {
  const auto p = vec(project_isotonic_box(std::vector<double>{0.5, 0.2}).values());
  CHECK(p[0] == doctest::Approx(0.35));
  CHECK(p[1] == doctest::Approx(0.35));
  CHECK(vec(project_isotonic_box(std::vector<double>{-1, 2}).values()) == std::vector<double>{0, 1});
  const std::vector<double> m{0.2, 0.2, 0.7};
  CHECK(vec(project_isotonic_box(m).values()) == m);
}

TEST_CASE("pava is optimal against a grid search") {
  Rng rng(1, "test/pava-grid");
  const auto levels = oracle::grid(40);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + rng.below(5);
    std::vector<double> y(n), w(n);
    for (std::size_t t = 0; t < n; ++t) {
      y[t] = std::round(40 * rng.uniform()) / 40;
      w[t] = 1 + rng.below(3);
    }
    const PavaFit fit = pava(y, w);
    const auto best = oracle::best_on_levels(y, w, levels);
    double a = 0, b = 0;
    for (std::size_t t = 0; t < n; ++t) {
      a += w[t] * (y[t] - fit.fit[t]) * (y[t] - fit.fit[t]);
      b += w[t] * (y[t] - best[t]) * (y[t] - best[t]);
    }
    CHECK(a <= b + 1e-12);
    // The rounded fit is a grid member, so the grid optimum is within the
    // rounding error of the exact optimum.
    double total_w = 0;
    for (double x : w) total_w += x;
    CHECK(b - a <= total_w / (4.0 * 40 * 40) + 1e-12);
  }
}

TEST_CASE("level sets hold weighted means and increase strictly") {
  Rng rng(2, "test/pava-levels");
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.below(30);
    std::vector<double> y(n), w(n);
    for (std::size_t t = 0; t < n; ++t) {
      y[t] = rng.uniform();
      w[t] = 0.2 + rng.uniform();
    }
    const PavaFit fit = pava(y, w);
    std::size_t pos = 0;
    for (std::size_t b = 0; b < fit.level_sets.size(); ++b) {
      const LevelSet& s = fit.level_sets[b];
      CHECK(s.begin == pos);
      pos = s.end;
      double num = 0, den = 0;
      for (std::size_t t = s.begin; t < s.end; ++t) {
        num += w[t] * y[t];
        den += w[t];
      }
      CHECK(s.value == doctest::Approx(num / den).epsilon(1e-12));
      CHECK(s.weight == doctest::Approx(den).epsilon(1e-12));
      if (b) CHECK(fit.level_sets[b - 1].value < s.value);
    }
    CHECK(pos == n);
  }
}

TEST_CASE("entropic minimiser equals the pava fit") {
  Rng rng(3, "test/bregman");
  std::vector<double> levels;
  for (int j = 1; j < 30; ++j) levels.push_back(j / 30.0);
  for (int i = 0; i < 30; ++i) {
    const std::size_t n = 1 + rng.below(4);
    std::vector<double> y(n);
    for (double& v : y) v = 0.05 + 0.9 * rng.uniform();
    const double star = best_isotonic_loss(y, LossKind::entropic);
    double best = 1e300;
    oracle::for_each_isotonic(n, levels, [&](const std::vector<double>& f) {
      best = std::min(best, total_loss(LossKind::entropic, y, f));
    });
    CHECK(star <= best + 1e-12);
  }
}

TEST_CASE("l1 fit matches exhaustive search over label values") {
  Rng rng(4, "test/l1");
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng.below(6);
    std::vector<double> y(n);
    for (double& v : y) v = rng.below(5) / 4.0;
    std::vector<double> candidates(y);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    double best = 1e300;
    oracle::for_each_isotonic(n, candidates, [&](const std::vector<double>& f) {
      best = std::min(best, oracle::abs_loss(y, f));
    });
    const auto fit = vec(l1_isotonic(y).values());
    CHECK(oracle::abs_loss(y, fit) == doctest::Approx(best).epsilon(1e-12));
    CHECK(best_isotonic_loss(y, LossKind::absolute) == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("box projection is the nearest point on a fine grid") {
  Rng rng(5, "test/projection");
  const auto levels = oracle::grid(50);
  for (int i = 0; i < 40; ++i) {
    const std::size_t n = 1 + rng.below(4);
    std::vector<double> v(n), w(n, 1.0);
    for (double& x : v) x = std::round(50 * (3 * rng.uniform() - 1)) / 50;
    const auto proj = vec(project_isotonic_box(v).values());
    const auto best = oracle::best_on_levels(v, w, levels);
    CHECK(oracle::sq_loss(v, proj) <= oracle::sq_loss(v, best) + 1e-12);
  }
}
