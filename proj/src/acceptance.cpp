#include "oir/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <sstream>

#include "oir/adversary.hpp"
#include "oir/continuous_ew.hpp"
#include "oir/engine.hpp"
#include "oir/ew_net.hpp"
#include "oir/gradient.hpp"
#include "oir/isotonic.hpp"
#include "oir/minimax.hpp"
#include "oir/registry.hpp"
#include "oir/rng.hpp"

namespace oir {

namespace {

/// Forwards to a covering-net learner but feeds it 1 - y.
class BetaFaultLearner final : public Learner {
 public:
  explicit BetaFaultLearner(std::unique_ptr<Learner> inner) : inner_(std::move(inner)) {}
  double predict(std::size_t index) override { return inner_->predict(index); }
  void observe(std::size_t index, double label) override { inner_->observe(index, 1.0 - label); }
  std::size_t horizon() const override { return inner_->horizon(); }
  LossKind loss_kind() const override { return inner_->loss_kind(); }
  std::string name() const override { return inner_->name(); }

 private:
  std::unique_ptr<Learner> inner_;
};

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail << "FAILED: ";
      detail << what << "; ";
      passed = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<std::uint64_t> seed_range(std::uint64_t first, std::uint64_t count) {
  std::vector<std::uint64_t> s;
  for (std::uint64_t i = 0; i < count; ++i) s.push_back(first + i);
  return s;
}

std::vector<std::size_t> powers_of_two(unsigned lo, unsigned hi) {
  std::vector<std::size_t> v;
  for (unsigned e = lo; e <= hi; ++e) v.push_back(std::size_t{1} << e);
  return v;
}

NamedLearner registry_learner(const std::string& name, LossKind kind, ComponentOptions opts = {}) {
  return {name, [=](std::size_t t, std::uint64_t) { return make_learner(name, t, kind, opts); }};
}

NamedAdversary registry_adversary(const std::string& label, const std::string& name,
                                  ComponentOptions opts = {}) {
  return {label, [=](std::size_t t, std::uint64_t seed) { return make_adversary(name, t, seed, opts); }};
}

ComponentOptions with_order(const std::string& order) {
  ComponentOptions o;
  o.order = order;
  return o;
}

double worst_ratio(const SweepReport& r) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : r.cells)
    if (c.bound) worst = std::max(worst, c.regret / *c.bound);
  return worst;
}

/// Calls `visit` on every non-decreasing sequence of length n over `levels`.
void for_each_isotonic(std::size_t n, std::span<const double> levels,
                       const std::function<void(const std::vector<double>&)>& visit) {
  std::vector<double> f(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == n) {
      visit(f);
      return;
    }
    for (std::size_t j = from; j < levels.size(); ++j) {
      f[pos] = levels[j];
      rec(pos + 1, j);
    }
  };
  rec(0, 0);
}

// ---------------------------------------------------------------------------

void check_dp_oracle(const AcceptanceOptions& opts, Outcome& out) {
  const auto start = Clock::now();
  Rng rng(20240601, "acceptance/dp-oracle");
  double worst = 0.0;
  std::size_t games = 0, predictions = 0;
  for (std::size_t g = 0; g < 300; ++g) {
    const LossKind kind = g % 2 ? LossKind::entropic : LossKind::squared;
    const std::size_t horizon = 1 + rng.below(6);
    const std::size_t k = kind == LossKind::entropic ? 2 + rng.below(2) : 1 + rng.below(3);
    const std::vector<std::size_t> order = rng.permutation(horizon);
    std::vector<double> labels(horizon);
    for (double& y : labels) {
      y = rng.uniform();
      if (kind == LossKind::squared && rng.bernoulli(0.2)) y = std::round(y);
    }
    std::unique_ptr<Learner> dp = std::make_unique<EwNetLearner>(horizon, kind, EwNetOptions{k, {}, false});
    if (opts.inject_beta_fault) dp = std::make_unique<BetaFaultLearner>(std::move(dp));
    NaiveEwNetLearner naive(horizon, kind, k);
    for (std::size_t i : order) {
      const double a = dp->predict(i);
      const double b = naive.predict(i);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
      dp->observe(i, labels[i]);
      naive.observe(i, labels[i]);
      ++predictions;
    }
    ++games;
  }
  const double secs = seconds_since(start);
  out.detail << games << " games, " << predictions << " predictions, max rel diff " << worst
             << ", " << secs << " s; ";
  out.require(worst <= 1e-9, "relative difference above 1e-9");
  out.require(secs < 10.0, "runtime above 10 s");
}

void check_squared_bound(const AcceptanceOptions& opts, Outcome& out) {
  const auto start = Clock::now();
  const std::vector<std::size_t> horizons = powers_of_two(6, 12);
  const NamedLearner learner = registry_learner("ew-net", LossKind::squared);
  struct Part {
    std::vector<NamedAdversary> adversaries;
    std::vector<std::uint64_t> seeds;
  };
  const std::vector<Part> parts = {
      {{registry_adversary("lb-segments", "lb-segments")}, seed_range(1, 20)},
      {{registry_adversary("gd-killer-zeros", "gd-killer-zeros"),
        registry_adversary("gd-killer-ones", "gd-killer-ones")},
       {1}},
      {{registry_adversary("random-iso", "random-iso")}, seed_range(1, 5)},
      {{registry_adversary("random-iso/random-order", "random-iso", with_order("random")),
        registry_adversary("lb-segments/random-order", "lb-segments", with_order("random"))},
       seed_range(1, 5)},
  };
  std::size_t cells = 0, violations = 0;
  double ratio = -std::numeric_limits<double>::infinity();
  for (const Part& p : parts) {
    const SweepReport r = regret_curve({{learner}, p.adversaries, horizons, p.seeds, LossKind::squared, opts.threads});
    cells += r.cells.size();
    violations += r.violations;
    ratio = std::max(ratio, worst_ratio(r));
  }
  const double secs = seconds_since(start);
  out.detail << cells << " games, " << violations << " violations, max regret/bound " << ratio
             << ", " << secs << " s; ";
  out.require(violations == 0, "bound violated");
  out.require(secs < 300.0, "runtime above 5 min");
}

void check_fast_path(const AcceptanceOptions&, Outcome& out) {
  Rng rng(7, "acceptance/fast-path");
  double worst = 0.0;
  std::size_t rounds = 0, ops_mismatch = 0, max_ops_excess = 0;
  for (LossKind kind : {LossKind::squared, LossKind::entropic}) {
    for (std::size_t horizon : {1, 2, 3, 10, 57, 200}) {
      for (std::size_t k : {1, 2, 3, 6, 10}) {
        if (kind == LossKind::entropic && k < 2) continue;
        const std::vector<double> grid = kind == LossKind::entropic ? ew_entropic_grid(k) : uniform_grid(k);
        const double eta = kind == LossKind::entropic ? 1.0 : 0.5;
        NetWeightsState slow(horizon, grid, eta, kind), fast(horizon, grid, eta, kind);
        for (std::size_t t = 0; t < horizon; ++t) {
          const double a = slow.predict(t);
          const double b = fast.predict_isotonic_fast(t);
          worst = std::max(worst, std::abs(a - b));
          // Per round: one forward column update (K + 1), K ratio steps and
          // K + 1 exponentials, whatever T is.
          const std::size_t expected = t == 0 ? 2 * k + 1 : 3 * k + 2;
          if (fast.last_fast_operations() != expected) ++ops_mismatch;
          max_ops_excess = std::max(max_ops_excess, fast.last_fast_operations());
          const double y = rng.bernoulli(0.3) ? std::round(rng.uniform()) : rng.uniform();
          slow.observe(t, y);
          fast.observe(t, y);
          ++rounds;
        }
      }
    }
  }
  out.detail << rounds << " rounds, max abs diff " << worst << ", max ops/round " << max_ops_excess
             << "; ";
  out.require(worst <= 1e-10, "fast path differs by more than 1e-10");
  out.require(ops_mismatch == 0, "per-round fast-path cost depends on more than K");
}

void check_linear_regret(const AcceptanceOptions&, Outcome& out) {
  for (std::size_t horizon : {100, 1000}) {
    const IsotonicFunction init = IsotonicFunction::diagonal(horizon);
    double sum_sq = 0.0, sum_sq_mirror = 0.0;
    for (double f : init.values()) {
      sum_sq += f * f;
      sum_sq_mirror += (1.0 - f) * (1.0 - f);
    }
    const double target = static_cast<double>(horizon) / 4.0 - 1e-6;
    auto play = [&](Learner& learner, KillerVariant v) {
      ObliviousAdversary adv(gd_killer(horizon, v), "gd-killer");
      return run_game(learner, adv, LossKind::squared);
    };
    for (double eta : {0.1, 0.5, 1.0}) {
      OgdLearner l0(init, eta), l1(init, eta);
      const GameResult z = play(l0, KillerVariant::zeros);
      const GameResult o = play(l1, KillerVariant::ones);
      const double worse = std::max(z.regret, o.regret);
      out.detail << "ogd eta=" << eta << " T=" << horizon << " regret " << worse << "; ";
      out.require(worse >= target, "ogd regret below T/4");
      out.require(std::abs(z.learner_loss - sum_sq) <= 1e-9, "ogd loss differs from sum f_init^2");
      out.require(std::abs(o.learner_loss - sum_sq_mirror) <= 1e-9,
                  "ogd loss differs from sum (1 - f_init)^2 on the mirrored sequence");
    }
    for (double lambda : {0.1, 1.0, 10.0}) {
      FtrlLearner l0(init, lambda), l1(init, lambda);
      const double worse = std::max(play(l0, KillerVariant::zeros).regret, play(l1, KillerVariant::ones).regret);
      out.detail << "ftrl lambda=" << lambda << " T=" << horizon << " regret " << worse << "; ";
      out.require(worse >= target, "ftrl regret below T/4");
    }
  }
}

void check_continuous_ew(const AcceptanceOptions&, Outcome& out) {
  const std::size_t horizon = 1024;
  ContinuousEwLearner learner(horizon);
  ObliviousAdversary adv(gd_killer(horizon, KillerVariant::zeros), "gd-killer-zeros");
  const GameResult r = run_game(learner, adv, LossKind::squared);
  double min_late = 1.0;
  for (std::size_t t = 512; t < horizon; ++t) min_late = std::min(min_late, r.transcript[t].prediction);
  const double first = r.transcript[0].prediction;
  out.detail << "min prediction over t > 512: " << min_late << ", loss " << r.learner_loss
             << ", first prediction " << first << "; ";
  out.require(min_late >= 0.125, "prediction below 1/8 in the second half");
  out.require(r.learner_loss >= 8.0, "cumulative loss below T/128");
  out.require(std::abs(first - 1.0 / (horizon + 1.0)) <= 1e-10, "first prediction is not 1/(T+1)");
}

void check_minimax_any(const AcceptanceOptions&, Outcome& out) {
  double worst_split = 0.0;
  for (std::size_t horizon : {1, 3, 7, 15, 31, 63}) {
    MinimaxAnyOrderLearner learner(horizon);
    MidpointSplitter adv(horizon);
    const GameResult r = run_game(learner, adv, LossKind::squared);
    worst_split = std::max(worst_split, std::abs(r.learner_loss - 0.25 * std::log2(horizon + 1.0)));
  }
  out.detail << "midpoint splitter max |loss - log2(T+1)/4| " << worst_split << "; ";
  out.require(worst_split <= 1e-8, "midpoint splitter loss differs from log2(T+1)/4");

  Rng rng(99, "acceptance/minimax-any");
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < 100; ++g) {
    const std::size_t horizon = 1 + rng.below(64);
    const std::uint64_t seed = rng.below(1u << 30);
    const LabelSequence base = random_isotonic(horizon, seed);
    std::vector<double> labels(base.labels().begin(), base.labels().end());
    if (g % 2) {
      for (double& y : labels) y = std::round(2.0 * y) / 2.0;
    }
    ObliviousAdversary adv({LabelSequence(labels, true), random_order(horizon, seed)}, "random");
    MinimaxAnyOrderLearner learner(horizon);
    const GameResult r = run_game(learner, adv, LossKind::squared);
    worst_excess = std::max(worst_excess, r.learner_loss - 0.25 * std::log2(horizon + 1.0));
  }
  out.detail << "random games max loss - log2(T+1)/4 " << worst_excess << "; ";
  out.require(worst_excess <= 1e-8, "random noise-free game exceeded log2(T+1)/4");

  const std::vector<double> beta = minimax_beta_table(2048);
  double beta_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n <= 2048; ++n) {
    beta_excess = std::max(beta_excess, beta[n] - 0.25 * std::log2(n + 1.0));
  }
  out.detail << "max beta_n - log2(n+1)/4 " << beta_excess << "; ";
  out.require(beta_excess <= 1e-12, "beta_n above log2(n+1)/4");
}

void check_minimax_iso(const AcceptanceOptions&, Outcome& out) {
  const std::vector<double> alpha = minimax_alpha_table(64);
  double worst = 0.0, ew_gap = std::numeric_limits<double>::infinity();
  for (std::size_t horizon = 1; horizon <= 64; ++horizon) {
    MinimaxIsotonicLearner learner(horizon);
    GreedyIsotonicAdversary adv(horizon);
    worst = std::max(worst, std::abs(run_game(learner, adv, LossKind::squared).learner_loss - alpha[horizon]));
    EwNetLearner ew(horizon, LossKind::squared);
    GreedyIsotonicAdversary adv2(horizon);
    ew_gap = std::min(ew_gap, run_game(ew, adv2, LossKind::squared).learner_loss - alpha[horizon]);
  }
  const std::vector<double> long_alpha = minimax_alpha_table(100000);
  const double alpha_max = *std::max_element(long_alpha.begin(), long_alpha.end());
  out.detail << "max |loss - alpha_T| " << worst << ", max alpha_T (T <= 1e5) " << alpha_max
             << ", min ew-net loss - alpha_T " << ew_gap << "; ";
  out.require(worst <= 1e-9, "greedy game loss differs from alpha_T");
  out.require(alpha_max <= 1.0, "alpha_T above 1");
  out.require(ew_gap >= -1e-9, "ew-net loss below alpha_T");
}

void check_entropic_bound(const AcceptanceOptions& opts, Outcome& out) {
  auto interior = [](double y) { return 0.02 + 0.96 * y; };
  const std::vector<NamedAdversary> adversaries = {
      {"uniform/random-order",
       [=](std::size_t t, std::uint64_t seed) -> std::unique_ptr<Adversary> {
         Rng rng(seed, "acceptance/entropic-uniform");
         std::vector<double> y(t);
         for (double& v : y) v = interior(rng.uniform());
         return std::make_unique<ObliviousAdversary>(ObliviousGame{LabelSequence(y), random_order(t, seed)}, "uniform");
       }},
      {"random-iso",
       [=](std::size_t t, std::uint64_t seed) -> std::unique_ptr<Adversary> {
         const LabelSequence base = random_isotonic(t, seed);
         std::vector<double> y(base.labels().begin(), base.labels().end());
         for (double& v : y) v = interior(v);
         return std::make_unique<ObliviousAdversary>(
             ObliviousGame{LabelSequence(y, true), RevealOrder::isotonic(t)}, "random-iso");
       }},
      {"lb-segments",
       [=](std::size_t t, std::uint64_t seed) -> std::unique_ptr<Adversary> {
         ObliviousGame g = lower_bound_sequence(t, {}, seed);
         std::vector<double> y(g.labels.labels().begin(), g.labels.labels().end());
         for (double& v : y) v = v > 0.5 ? 0.95 : 0.05;
         return std::make_unique<ObliviousAdversary>(ObliviousGame{LabelSequence(y), g.order}, "lb");
       }},
  };
  const SweepReport r = regret_curve({{registry_learner("ew-entropic", LossKind::entropic)},
                                      adversaries,
                                      {16, 64, 256, 1024, 2048},
                                      seed_range(1, 3),
                                      LossKind::entropic,
                                      opts.threads});
  out.detail << r.cells.size() << " games, " << r.violations << " violations, max regret/bound "
             << worst_ratio(r) << "; ";
  out.require(r.violations == 0, "bound violated");
}

void check_eg(const AcceptanceOptions& opts, Outcome& out) {
  std::vector<NamedAdversary> matrix;
  for (const std::string& n : adversary_names()) {
    if (n != "fixed") matrix.push_back(registry_adversary(n, n));
  }
  matrix.push_back(registry_adversary("lb-segments/random-order", "lb-segments", with_order("random")));
  matrix.push_back(registry_adversary("random-iso/random-order", "random-iso", with_order("random")));
  matrix.push_back(registry_adversary("noisy-iso/random-order", "noisy-iso", with_order("random")));
  const SweepReport sq = regret_curve({{registry_learner("eg", LossKind::squared)},
                                       matrix,
                                       {64, 256, 1024, 4096},
                                       seed_range(1, 3),
                                       LossKind::squared,
                                       opts.threads});
  out.detail << "squared: " << sq.cells.size() << " games, " << sq.violations
             << " violations, max regret/bound " << worst_ratio(sq) << "; ";
  out.require(sq.violations == 0, "squared-loss EG bound violated");

  const std::vector<NamedAdversary> random_games = {
      registry_adversary("lb-segments/random-order", "lb-segments", with_order("random")),
      registry_adversary("random-iso/random-order", "random-iso", with_order("random")),
      registry_adversary("noisy-iso/random-order", "noisy-iso", with_order("random")),
  };
  const SweepReport ab = regret_curve({{registry_learner("eg-abs", LossKind::absolute)},
                                       random_games,
                                       powers_of_two(6, 12),
                                       seed_range(1, 5),
                                       LossKind::absolute,
                                       opts.threads});
  for (const ExponentFit& f : ab.fits) {
    out.detail << "absolute " << f.adversary << " slope " << f.max_fit.slope << "; ";
    out.require(f.max_fit.points >= 2 && f.max_fit.slope <= 0.6, "absolute-loss EG exponent above 0.6");
  }
  out.detail << "absolute bound violations " << ab.violations << "; ";
  out.require(ab.violations == 0, "absolute-loss EG bound violated");
}

void check_discretization(const AcceptanceOptions&, Outcome& out) {
  Rng rng(5, "acceptance/discretization");
  double worst_ratio_seen = 0.0, worst_identity = 0.0, worst_on_grid = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t horizon = 1 + rng.below(100);
    const std::size_t k = 1 + rng.below(10);
    std::vector<double> y(horizon);
    const double p = rng.uniform();
    for (double& v : y) {
      switch (i % 3) {
        case 0: v = rng.uniform(); break;
        case 1: v = rng.bernoulli(p) ? 1.0 : 0.0; break;
        default: v = std::clamp(p + 0.3 * (rng.uniform() - 0.5), 0.0, 1.0); break;
      }
    }
    const DiscretizationGap g = discretization_gap(y, k);
    const double cap = static_cast<double>(horizon) / (4.0 * static_cast<double>(k * k));
    worst_ratio_seen = std::max(worst_ratio_seen, g.gap / cap);
    worst_identity = std::max(worst_identity, std::abs(g.gap - g.squared_distance));

    std::vector<double> on_grid(horizon);
    for (double& v : on_grid) v = static_cast<double>(rng.below(k + 1)) / static_cast<double>(k);
    std::sort(on_grid.begin(), on_grid.end());
    worst_on_grid = std::max(worst_on_grid, std::abs(discretization_gap(on_grid, k).gap));
  }
  out.detail << "max gap/(T/4K^2) " << worst_ratio_seen << ", max |gap - sum sq| " << worst_identity
             << ", max on-grid gap " << worst_on_grid << "; ";
  out.require(worst_ratio_seen <= 1.0 + 1e-12, "gap above T/(4K^2)");
  out.require(worst_identity <= 1e-10, "level-set identity off by more than 1e-10");
  out.require(worst_on_grid <= 1e-12, "gap nonzero for on-grid labels");
}

void check_lower_bound(const AcceptanceOptions& opts, Outcome& out) {
  const SweepReport r = regret_curve({{registry_learner("ew-net-fast", LossKind::squared)},
                                      {registry_adversary("lb-segments", "lb-segments")},
                                      powers_of_two(6, 13),
                                      seed_range(1, 20),
                                      LossKind::squared,
                                      opts.threads});
  const ExponentFit& f = r.fits.at(0);
  out.detail << "max-over-seeds slope " << f.max_fit.slope << " (residual " << f.max_fit.residual
             << "), mean slope " << f.mean_fit.slope << "; ";
  out.require(f.max_fit.slope >= 0.25 && f.max_fit.slope <= 0.50, "slope outside [0.25, 0.50]");
}

void check_pava(const AcceptanceOptions&, Outcome& out) {
  Rng rng(11, "acceptance/pava");
  double avg_err = 0.0;
  bool ordered = true, partition = true;
  for (std::size_t i = 0; i < 500; ++i) {
    const std::size_t horizon = 1 + rng.below(50);
    std::vector<double> y(horizon), w(horizon);
    for (std::size_t t = 0; t < horizon; ++t) {
      y[t] = rng.uniform();
      w[t] = 0.1 + rng.uniform();
    }
    const PavaFit fit = pava(y, w);
    std::size_t expect_begin = 0;
    for (std::size_t b = 0; b < fit.level_sets.size(); ++b) {
      const LevelSet& s = fit.level_sets[b];
      partition = partition && s.begin == expect_begin && s.end > s.begin;
      expect_begin = s.end;
      double num = 0.0, den = 0.0;
      for (std::size_t t = s.begin; t < s.end; ++t) {
        num += w[t] * y[t];
        den += w[t];
        avg_err = std::max(avg_err, std::abs(fit.fit[t] - s.value));
      }
      avg_err = std::max(avg_err, std::abs(s.value - num / den));
      if (b > 0) ordered = ordered && fit.level_sets[b - 1].value < s.value;
    }
    partition = partition && expect_begin == horizon;
  }
  out.detail << "level-set mean error " << avg_err << "; ";
  out.require(avg_err <= 1e-12, "level-set value is not the block average");
  out.require(ordered, "level-set values not strictly increasing");
  out.require(partition, "level sets do not partition the positions");

  const std::size_t res = 12;
  std::vector<double> levels(res + 1), interior_levels;
  for (std::size_t j = 0; j <= res; ++j) levels[j] = static_cast<double>(j) / res;
  interior_levels.assign(levels.begin() + 1, levels.end() - 1);
  double sq_excess = -1.0, sq_slack = 0.0, ent_excess = -1.0;
  for (std::size_t i = 0; i < 60; ++i) {
    const std::size_t horizon = 1 + i % 6;
    std::vector<double> y(horizon);
    for (double& v : y) v = 0.05 + 0.9 * rng.uniform();
    const IsotonicFunction star = pava(y).clipped();
    const double sq_star = total_loss(LossKind::squared, y, star.values());
    const double ent_star = total_loss(LossKind::entropic, y, star.values());
    double sq_min = std::numeric_limits<double>::infinity();
    double ent_min = std::numeric_limits<double>::infinity();
    for_each_isotonic(horizon, levels, [&](const std::vector<double>& f) {
      sq_min = std::min(sq_min, total_loss(LossKind::squared, y, f));
    });
    for_each_isotonic(horizon, interior_levels, [&](const std::vector<double>& f) {
      ent_min = std::min(ent_min, total_loss(LossKind::entropic, y, f));
    });
    sq_excess = std::max(sq_excess, sq_star - sq_min);
    sq_slack = std::max(sq_slack, (sq_min - sq_star) / (horizon / (4.0 * res * res)));
    ent_excess = std::max(ent_excess, ent_star - ent_min);
  }
  out.detail << "squared: max pava - grid " << sq_excess << ", max (grid - pava)/(T/4K^2) " << sq_slack
             << "; entropic: max pava - grid " << ent_excess << "; ";
  out.require(sq_excess <= 1e-12, "grid function beats the pava fit under squared loss");
  out.require(sq_slack <= 1.0 + 1e-9, "grid optimum farther from pava than the grid resolution allows");
  out.require(ent_excess <= 1e-12, "grid function beats the pava fit under entropic loss");
}

struct Check {
  CheckInfo info;
  void (*run)(const AcceptanceOptions&, Outcome&);
};

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {{"1", "ew-net", "dp-oracle: DP predictions equal net enumeration"}, check_dp_oracle},
      {{"2", "ew-net", "squared-bound: tuned ew-net regret bound"}, check_squared_bound},
      {{"3", "ew-net", "fast-path: isotonic-order acceleration"}, check_fast_path},
      {{"4", "gradient", "linear-regret: OGD and FTRL on killer sequences"}, check_linear_regret},
      {{"5", "continuous-ew", "continuous-ew: uniform-prior EW on all zeros"}, check_continuous_ew},
      {{"6", "minimax", "minimax-any: any-order minimax value"}, check_minimax_any},
      {{"7", "minimax", "minimax-iso: isotonic-order minimax value"}, check_minimax_iso},
      {{"8", "ew-entropic", "entropic-bound: arcsine-grid ew-net regret bound"}, check_entropic_bound},
      {{"9", "gradient", "eg-bound: exponentiated gradient"}, check_eg},
      {{"10", "discretization", "discretization: grid rounding of the PAVA fit"}, check_discretization},
      {{"11", "lower-bound", "lower-bound: regret growth on segment sequences"}, check_lower_bound},
      {{"12", "pava", "pava: level sets, optimality, Bregman invariance"}, check_pava},
  };
  return all;
}

bool selected(const CheckInfo& c, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  const std::string slug = c.title.substr(0, c.title.find(':'));
  for (const auto& o : only) {
    if (o == c.id || o == c.group || o == slug) return true;
  }
  return false;
}

}  // namespace

const std::vector<CheckInfo>& acceptance_checks() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> v;
    for (const auto& c : checks()) v.push_back(c.info);
    return v;
  }();
  return infos;
}

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<CheckResult> results;
  for (const Check& c : checks()) {
    if (!selected(c.info, options.only)) continue;
    const auto start = Clock::now();
    Outcome out;
    try {
      c.run(options, out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    CheckResult r{c.info.id, c.info.group, c.info.title, out.passed, out.detail.str(), seconds_since(start)};
    while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace oir
