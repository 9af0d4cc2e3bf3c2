#include "oir/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oir/isotonic.hpp"

namespace oir {

namespace {

double prefix_sum(std::span<const double> p, std::size_t index) {
  return std::clamp(std::accumulate(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(index) + 1,
                                    0.0),
                    0.0, 1.0);
}

}  // namespace

EgStep eg_step(std::span<const double> p, std::size_t index, double y, double eta,
               LossKind kind) {
  if (p.size() < 2) throw std::invalid_argument("eg_step: simplex needs T + 1 >= 2 entries");
  if (index + 1 >= p.size()) throw std::out_of_range("eg_step: position out of range");
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("eg_step: p is not normalised");
  if (kind == LossKind::entropic) throw std::invalid_argument("eg_step: entropic loss unsupported");

  EgStep out{prefix_sum(p, index), std::vector<double>(p.begin(), p.end())};
  // Gradient is g on coordinates 0..index and 0 elsewhere.
  const double g = loss_gradient(kind, y, out.prediction);
  const double factor = std::exp(-eta * g);
  for (std::size_t j = 0; j <= index; ++j) out.weights[j] *= factor;
  const double z = std::accumulate(out.weights.begin(), out.weights.end(), 0.0);
  for (double& x : out.weights) x /= z;
  return out;
}

double eg_default_eta_squared(std::size_t horizon) {
  const double l = std::log(static_cast<double>(horizon) + 1.0);
  return 2.0 * std::sqrt(l) / (std::sqrt(static_cast<double>(horizon) / 2.0) + std::sqrt(l));
}

double eg_default_eta_absolute(std::size_t horizon) {
  const double t = static_cast<double>(horizon);
  return std::sqrt(8.0 * std::log(t + 1.0) / t);
}

double eg_squared_bound(std::size_t horizon) {
  const double t = static_cast<double>(horizon);
  const double l = std::log(t + 1.0);
  return std::sqrt(t * l / 2.0) + l / 2.0;
}

double eg_absolute_bound(std::size_t horizon) {
  const double t = static_cast<double>(horizon);
  return std::sqrt(t * std::log(t + 1.0) / 2.0);
}

EgLearner::EgLearner(std::size_t horizon, LossKind kind, std::optional<double> eta)
    : tracker_(horizon), kind_(kind), tuned_(!eta), p_(horizon + 1, 1.0 / static_cast<double>(horizon + 1)) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  if (kind == LossKind::entropic) throw std::invalid_argument("EG learner supports squared and absolute loss");
  eta_ = eta ? *eta : (kind == LossKind::absolute ? eg_default_eta_absolute(horizon)
                                                  : eg_default_eta_squared(horizon));
  if (!(eta_ >= 0.0)) throw std::invalid_argument("eta must be non-negative");
}

double EgLearner::predict(std::size_t index) {
  tracker_.require_unlabeled(index);
  return prefix_sum(p_, index);
}

void EgLearner::observe(std::size_t index, double label) {
  tracker_.mark(index);
  p_ = eg_step(p_, index, label, eta_, kind_).weights;
}

std::optional<double> EgLearner::regret_bound() const {
  if (!tuned_) return std::nullopt;
  return kind_ == LossKind::absolute ? eg_absolute_bound(tracker_.horizon())
                                     : eg_squared_bound(tracker_.horizon());
}

OgdStep ogd_step(const IsotonicFunction& f, std::size_t index, double y, double eta) {
  if (index >= f.size()) throw std::out_of_range("ogd_step: position out of range");
  const double prediction = f[index];
  std::vector<double> moved(f.values().begin(), f.values().end());
  moved[index] -= 2.0 * eta * (prediction - y);
  return {prediction, project_isotonic_box(moved)};
}

OgdLearner::OgdLearner(IsotonicFunction init, double eta)
    : tracker_(init.size()), f_(std::move(init)), eta_(eta) {
  if (f_.size() == 0) throw std::invalid_argument("horizon must be positive");
  if (!(eta_ >= 0.0)) throw std::invalid_argument("eta must be non-negative");
}

double OgdLearner::predict(std::size_t index) {
  tracker_.require_unlabeled(index);
  return f_[index];
}

void OgdLearner::observe(std::size_t index, double label) {
  tracker_.mark(index);
  f_ = ogd_step(f_, index, label, eta_).function;
}

IsotonicFunction ftrl_predict(const IsotonicFunction& f0, double lambda,
                              std::span<const std::pair<std::size_t, double>> history) {
  if (!(lambda > 0.0)) throw std::invalid_argument("ftrl: lambda must be positive");
  const std::size_t n = f0.size();
  std::vector<double> counts(n, 0.0), sums(n, 0.0);
  for (const auto& [i, y] : history) {
    if (i >= n) throw std::out_of_range("ftrl: history position out of range");
    counts[i] += 1.0;
    sums[i] += y;
  }
  std::vector<double> target(n), weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = lambda + counts[i];
    target[i] = (lambda * f0[i] + sums[i]) / weight[i];
  }
  return pava(target, weight).clipped();
}

FtrlLearner::FtrlLearner(IsotonicFunction f0, double lambda)
    : tracker_(f0.size()), f0_(std::move(f0)), lambda_(lambda) {
  if (f0_.size() == 0) throw std::invalid_argument("horizon must be positive");
  if (!(lambda_ > 0.0)) throw std::invalid_argument("lambda must be positive");
}

double FtrlLearner::predict(std::size_t index) {
  tracker_.require_unlabeled(index);
  return ftrl_predict(f0_, lambda_, history_)[index];
}

void FtrlLearner::observe(std::size_t index, double label) {
  tracker_.mark(index);
  history_.emplace_back(index, label);
}

}  // namespace oir
