#include "oir/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oir/rng.hpp"

namespace oir {

ObliviousAdversary::ObliviousAdversary(ObliviousGame game, std::string name)
    : game_(std::move(game)), name_(std::move(name)) {
  if (game_.labels.size() != game_.order.size()) {
    throw std::invalid_argument("labels and reveal order differ in length");
  }
}

std::size_t ObliviousAdversary::next_index() {
  if (awaiting_label_ || t_ >= game_.order.size()) throw std::logic_error("no query pending");
  awaiting_label_ = true;
  return game_.order[t_];
}

double ObliviousAdversary::label(double) {
  if (!awaiting_label_) throw std::logic_error("label requested before next_index");
  awaiting_label_ = false;
  return game_.labels[game_.order[t_++]];
}

std::vector<double> lower_bound_probabilities(std::size_t segments,
                                              const std::vector<bool>& omega) {
  if (omega.size() != segments) throw std::invalid_argument("omega must have K entries");
  std::vector<double> p(segments);
  const double kk = static_cast<double>(segments);
  for (std::size_t k = 1; k <= segments; ++k) {
    const double step = omega[k - 1] ? static_cast<double>(k) : static_cast<double>(k - 1);
    p[k - 1] = 0.25 + step / (2.0 * kk);
  }
  return p;
}

std::size_t lower_bound_segment(std::size_t t, std::size_t horizon, std::size_t segments) {
  const std::size_t m = horizon / segments;
  return std::min(segments, (t + m - 1) / m);
}

std::size_t lower_bound_default_segments(std::size_t horizon) {
  const auto k = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(horizon))));
  return std::max<std::size_t>(k, 1);
}

ObliviousGame lower_bound_sequence(std::size_t horizon, const LowerBoundParams& params,
                                   std::uint64_t seed) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  const std::size_t k = params.segments.value_or(lower_bound_default_segments(horizon));
  if (k == 0 || k > horizon) throw std::invalid_argument("segment count must be in [1, T]");
  std::vector<bool> omega;
  if (params.omega) {
    omega = *params.omega;
  } else {
    Rng pick(seed, "lower-bound/omega");
    omega.resize(k);
    for (std::size_t i = 0; i < k; ++i) omega[i] = pick.bernoulli(0.5);
  }
  const std::vector<double> p = lower_bound_probabilities(k, omega);
  Rng draw(seed, "lower-bound/labels");
  std::vector<double> labels(horizon);
  for (std::size_t t = 1; t <= horizon; ++t) {
    labels[t - 1] = draw.bernoulli(p[lower_bound_segment(t, horizon, k) - 1]) ? 1.0 : 0.0;
  }
  return {LabelSequence(std::move(labels)), RevealOrder::isotonic(horizon)};
}

ObliviousGame gd_killer(std::size_t horizon, KillerVariant variant) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
  if (variant == KillerVariant::zeros) {
    return {LabelSequence(std::vector<double>(horizon, 0.0), true), RevealOrder::isotonic(horizon)};
  }
  return {LabelSequence(std::vector<double>(horizon, 1.0), true), RevealOrder::antitonic(horizon)};
}

LabelSequence random_isotonic(std::size_t horizon, std::uint64_t seed) {
  Rng rng(seed, "random-isotonic");
  std::vector<double> v(horizon);
  for (double& x : v) x = rng.uniform();
  std::sort(v.begin(), v.end());
  return LabelSequence(std::move(v), true);
}

LabelSequence noisy_isotonic(std::size_t horizon, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be non-negative");
  const LabelSequence base = random_isotonic(horizon, seed);
  if (sigma == 0.0) return base;
  Rng rng(seed, "noisy-isotonic");
  std::vector<double> v(base.labels().begin(), base.labels().end());
  for (double& x : v) {
    double z;
    do {
      z = rng.normal();
    } while (std::abs(z) > 3.0);
    x = std::clamp(x + sigma * z, 0.0, 1.0);
  }
  return LabelSequence(std::move(v));
}

RevealOrder random_order(std::size_t horizon, std::uint64_t seed) {
  Rng rng(seed, "random-order");
  return RevealOrder(rng.permutation(horizon));
}

MidpointSplitter::MidpointSplitter(std::size_t horizon) : horizon_(horizon), hi_(horizon) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
}

std::size_t MidpointSplitter::next_index() {
  if (awaiting_label_) throw std::logic_error("label pending");
  awaiting_label_ = true;
  if (!forced_.empty()) {
    current_forced_ = forced_.front();
    forced_.pop_front();
    return current_forced_->first;
  }
  if (lo_ >= hi_) throw std::logic_error("midpoint splitter exhausted");
  current_forced_.reset();
  mid_ = lo_ + (hi_ - lo_) / 2;
  return mid_;
}

double MidpointSplitter::label(double prediction) {
  if (!awaiting_label_) throw std::logic_error("label requested before next_index");
  awaiting_label_ = false;
  if (current_forced_) return current_forced_->second;
  // The active range is always bounded by 0 and 1.
  if (std::abs(prediction) <= std::abs(prediction - 1.0)) {
    for (std::size_t i = mid_ + 1; i < hi_; ++i) forced_.emplace_back(i, 1.0);
    hi_ = mid_;
    return 1.0;
  }
  for (std::size_t i = lo_; i < mid_; ++i) forced_.emplace_back(i, 0.0);
  lo_ = mid_ + 1;
  return 0.0;
}

GreedyIsotonicAdversary::GreedyIsotonicAdversary(std::size_t horizon)
    : horizon_(horizon), alpha_(minimax_alpha_table(horizon)) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
}

std::size_t GreedyIsotonicAdversary::next_index() {
  if (awaiting_label_ || t_ >= horizon_) throw std::logic_error("no query pending");
  awaiting_label_ = true;
  return t_;
}

double GreedyIsotonicAdversary::label(double prediction) {
  if (!awaiting_label_) throw std::logic_error("label requested before next_index");
  awaiting_label_ = false;
  const std::size_t remaining = horizon_ - t_;
  const double a = alpha_[remaining - 1];
  auto value = [&](double y) {
    const double d = prediction - y;
    return d * d + a * (1.0 - y) * (1.0 - y);
  };
  const double y = value(1.0) >= value(last_) ? 1.0 : last_;
  last_ = y;
  ++t_;
  return y;
}

OptimalAnyOrderAdversary::OptimalAnyOrderAdversary(std::size_t horizon)
    : state_(horizon), beta_(minimax_beta_table(horizon)) {}

std::size_t OptimalAnyOrderAdversary::next_index() {
  if (current_) throw std::logic_error("label pending");
  const std::vector<Segment> segs = state_.segments();
  if (segs.empty()) throw std::logic_error("optimal adversary exhausted");
  const Segment& seg = segs.front();
  const std::size_t n = seg.size() - 1;
  std::size_t best_k = 0;
  double best = -1.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double v = minimax_beta_split(beta_[k], beta_[n - k]);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  current_ = seg.begin + best_k;
  return *current_;
}

double OptimalAnyOrderAdversary::label(double prediction) {
  if (!current_) throw std::logic_error("label requested before next_index");
  const std::size_t index = *current_;
  current_.reset();
  const Segment seg = state_.segment_of(index);
  const double bl = beta_[index - seg.begin];
  const double br = beta_[seg.end - index - 1];
  auto value = [&](double y) {
    const double d = y - prediction;
    return d * d + bl * (y - seg.lower) * (y - seg.lower) + br * (seg.upper - y) * (seg.upper - y);
  };
  const double y = value(seg.upper) >= value(seg.lower) ? seg.upper : seg.lower;
  state_.reveal(index, y);
  return y;
}

}  // namespace oir
