#include "oir/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

namespace oir {

double minimax_beta_split(double beta_left, double beta_right) {
  const double d = beta_left - beta_right;
  if (d > 1.0) return beta_left;
  if (d < -1.0) return beta_right;
  return 0.25 * d * d + 0.5 * (beta_left + beta_right) + 0.25;
}

std::vector<double> minimax_beta_table(std::size_t horizon) {
  std::vector<double> beta(horizon + 1, 0.0);
  for (std::size_t n = 0; n < horizon; ++n) {
    double best = 0.0;
    for (std::size_t k = 0; k <= n; ++k) best = std::max(best, minimax_beta_split(beta[k], beta[n - k]));
    beta[n + 1] = best;
  }
  return beta;
}

double minimax_split_prediction(double lower, double upper, double beta_left, double beta_right) {
  const double d = beta_left - beta_right;
  if (d > 1.0) return upper;
  if (d < -1.0) return lower;
  return std::clamp(0.5 * (lower + upper) + 0.5 * (upper - lower) * d, lower, upper);
}

SegmentState::SegmentState(std::size_t horizon) : horizon_(horizon) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  labels_.emplace(0, 0.0);
  labels_.emplace(horizon + 1, 1.0);
}

bool SegmentState::revealed(std::size_t index) const {
  if (index >= horizon_) throw std::out_of_range("position out of range");
  return labels_.contains(index + 1);
}

Segment SegmentState::segment_of(std::size_t index) const {
  if (revealed(index)) throw std::logic_error("position already revealed");
  const auto right = labels_.upper_bound(index + 1);
  const auto left = std::prev(right);
  return Segment{left->first, right->first - 1, left->second, right->second};
}

std::vector<Segment> SegmentState::segments() const {
  std::vector<Segment> out;
  for (auto it = labels_.begin(), next = std::next(it); next != labels_.end(); ++it, ++next) {
    if (next->first > it->first + 1) {
      out.push_back(Segment{it->first, next->first - 1, it->second, next->second});
    }
  }
  return out;
}

void SegmentState::reveal(std::size_t index, double label) {
  const Segment seg = segment_of(index);
  if (!(label >= seg.lower && label <= seg.upper)) {
    throw NoiseFreeViolation("label " + std::to_string(label) + " at position " +
                             std::to_string(index) + " outside the feasible range [" +
                             std::to_string(seg.lower) + ", " + std::to_string(seg.upper) + "]");
  }
  labels_.emplace(index + 1, label);
}

MinimaxAnyOrderLearner::MinimaxAnyOrderLearner(std::size_t horizon)
    : state_(horizon), beta_(minimax_beta_table(horizon)) {}

double MinimaxAnyOrderLearner::predict(std::size_t index) {
  const Segment seg = state_.segment_of(index);
  const std::size_t left = index - seg.begin;
  const std::size_t right = seg.end - index - 1;
  return minimax_split_prediction(seg.lower, seg.upper, beta_[left], beta_[right]);
}

void MinimaxAnyOrderLearner::observe(std::size_t index, double label) {
  state_.reveal(index, label);
}

std::optional<double> MinimaxAnyOrderLearner::regret_bound() const {
  return 0.25 * std::log2(static_cast<double>(state_.horizon()) + 1.0);
}

std::vector<double> minimax_alpha_table(std::size_t horizon) {
  std::vector<double> alpha(horizon + 1, 0.0);
  if (horizon >= 1) alpha[1] = 0.25;
  for (std::size_t t = 2; t <= horizon; ++t) {
    const double h = 0.5 * (alpha[t - 1] + 1.0);
    alpha[t] = h * h;
  }
  return alpha;
}

double minimax_isotonic_predict(double last_label, std::size_t remaining,
                                std::span<const double> alpha_table) {
  if (remaining < 1) throw std::invalid_argument("minimax_isotonic_predict: need n >= 1");
  if (remaining - 1 >= alpha_table.size()) throw std::out_of_range("alpha table too short");
  const double c = last_label;
  const double y = 0.5 * (c + 1.0) + alpha_table[remaining - 1] * 0.5 * (c - 1.0);
  return std::clamp(y, c, 1.0);
}

MinimaxIsotonicLearner::MinimaxIsotonicLearner(std::size_t horizon)
    : horizon_(horizon), alpha_(minimax_alpha_table(horizon)) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
}

double MinimaxIsotonicLearner::predict(std::size_t index) {
  if (index != next_) throw std::logic_error("minimax-iso requires the reveal order 1..T");
  return minimax_isotonic_predict(last_, horizon_ - index, alpha_);
}

void MinimaxIsotonicLearner::observe(std::size_t index, double label) {
  if (index != next_) throw std::logic_error("minimax-iso requires the reveal order 1..T");
  if (!(label >= last_ && label <= 1.0)) {
    throw NoiseFreeViolation("label " + std::to_string(label) + " below the previous label " +
                             std::to_string(last_));
  }
  last_ = label;
  ++next_;
}

std::optional<double> MinimaxIsotonicLearner::regret_bound() const { return alpha_[horizon_]; }

}  // namespace oir
