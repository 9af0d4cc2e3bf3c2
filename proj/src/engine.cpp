#include "oir/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "oir/isotonic.hpp"

namespace oir {

GameResult run_game(Learner& learner, Adversary& adversary, LossKind kind) {
  const std::size_t horizon = adversary.horizon();
  if (learner.horizon() != horizon) {
    throw ProtocolError("learner horizon " + std::to_string(learner.horizon()) +
                        " differs from adversary horizon " + std::to_string(horizon));
  }
  if (learner.loss_kind() != kind) {
    throw ProtocolError("learner " + learner.name() + " is configured for " +
                        std::string(to_string(learner.loss_kind())) + " loss, game uses " +
                        std::string(to_string(kind)));
  }
  GameResult result;
  result.transcript.reserve(horizon);
  std::vector<bool> seen(horizon, false);
  for (std::size_t t = 0; t < horizon; ++t) {
    const std::size_t i = adversary.next_index();
    if (i >= horizon) throw ProtocolError("adversary chose position out of range: " + std::to_string(i));
    if (seen[i]) throw ProtocolError("adversary repeated position " + std::to_string(i));
    seen[i] = true;
    double p = learner.predict(i);
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ProtocolError(learner.name() + " predicted " + std::to_string(p) + " at position " +
                          std::to_string(i) + ", outside [0, 1]");
    }
    if (kind == LossKind::entropic) p = std::clamp(p, kEntropicClamp, 1.0 - kEntropicClamp);
    const double y = adversary.label(p);
    const double l = loss(kind, y, p);
    learner.observe(i, y);
    result.learner_loss += l;
    result.transcript.push_back({i, p, y, l});
  }
  result.oracle_loss = best_isotonic_loss(labels_by_position(result.transcript), kind);
  result.regret = result.learner_loss - result.oracle_loss;
  result.bound = learner.regret_bound();
  result.bound_satisfied = !result.bound || result.regret <= *result.bound + kBoundTolerance;
  return result;
}

std::vector<double> labels_by_position(const GameTranscript& transcript) {
  std::vector<double> labels(transcript.size(), 0.0);
  for (const Trial& tr : transcript) labels.at(tr.index) = tr.label;
  return labels;
}

DiscretizationGap discretization_gap(std::span<const double> labels, std::size_t grid_size) {
  if (grid_size == 0) throw std::invalid_argument("grid size must be positive");
  const IsotonicFunction star = pava(labels).clipped();
  const double k = static_cast<double>(grid_size);
  std::vector<double> plus(star.size());
  DiscretizationGap out;
  for (std::size_t t = 0; t < star.size(); ++t) {
    plus[t] = std::floor(star[t] * k + 0.5) / k;
    const double d = plus[t] - star[t];
    out.squared_distance += d * d;
  }
  out.gap = total_loss(LossKind::squared, labels, plus) -
            total_loss(LossKind::squared, labels, star.values());
  return out;
}

SlopeFit fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("x and y differ in length");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  SlopeFit fit;
  fit.points = lx.size();
  if (fit.points < 2) return fit;
  const double n = static_cast<double>(fit.points);
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    fit.residual += r * r;
  }
  return fit;
}

SweepReport regret_curve(const SweepConfig& config) {
  struct Job {
    std::size_t learner, adversary, horizon, seed;
  };
  std::vector<Job> jobs;
  for (std::size_t l = 0; l < config.learners.size(); ++l)
    for (std::size_t a = 0; a < config.adversaries.size(); ++a)
      for (std::size_t h = 0; h < config.horizons.size(); ++h)
        for (std::size_t s = 0; s < config.seeds.size(); ++s) jobs.push_back({l, a, h, s});

  SweepReport report;
  report.cells.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const Job& job = jobs[j];
      try {
        const std::size_t horizon = config.horizons[job.horizon];
        const std::uint64_t seed = config.seeds[job.seed];
        auto learner = config.learners[job.learner].make(horizon, seed);
        auto adversary = config.adversaries[job.adversary].make(horizon, seed);
        const GameResult r = run_game(*learner, *adversary, config.kind);
        report.cells[j] = SweepCell{horizon,
                                    config.learners[job.learner].name,
                                    config.adversaries[job.adversary].name,
                                    seed,
                                    r.learner_loss,
                                    r.oracle_loss,
                                    r.regret,
                                    r.bound,
                                    r.bound_satisfied};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(report.cells.begin(), report.cells.end(), [](const SweepCell& a, const SweepCell& b) {
    return std::tie(a.learner, a.adversary, a.horizon, a.seed) <
           std::tie(b.learner, b.adversary, b.horizon, b.seed);
  });

  for (const SweepCell& c : report.cells) {
    if (!c.bound_satisfied) ++report.violations;
  }

  std::map<std::pair<std::string, std::string>, std::map<std::size_t, std::vector<double>>> groups;
  for (const SweepCell& c : report.cells) groups[{c.learner, c.adversary}][c.horizon].push_back(c.regret);
  for (const auto& [key, by_t] : groups) {
    ExponentFit fit;
    fit.learner = key.first;
    fit.adversary = key.second;
    std::vector<double> xs;
    for (const auto& [t, regrets] : by_t) {
      fit.horizons.push_back(t);
      xs.push_back(static_cast<double>(t));
      fit.max_regret.push_back(*std::max_element(regrets.begin(), regrets.end()));
      double sum = 0.0;
      for (double r : regrets) sum += r;
      fit.mean_regret.push_back(sum / static_cast<double>(regrets.size()));
    }
    fit.max_fit = fit_loglog_slope(xs, fit.max_regret);
    fit.mean_fit = fit_loglog_slope(xs, fit.mean_regret);
    report.fits.push_back(std::move(fit));
  }
  return report;
}

}  // namespace oir
