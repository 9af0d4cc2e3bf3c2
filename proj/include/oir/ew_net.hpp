#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oir/core.hpp"
#include "oir/learner.hpp"

namespace oir {

/// Levels k / K, k = 0..K.
std::vector<double> uniform_grid(std::size_t grid_size);

/// Arcsine grid for the entropic loss: z_0 = sin^2(pi / 4K),
/// z_k = sin^2(pi k / 2K) for 0 < k < K, z_K = cos^2(pi / 4K).
std::vector<double> ew_entropic_grid(std::size_t grid_size);

/// Posterior mass of the net members, marginalised at one position.
struct NetMarginal {
  std::vector<double> level_weights;  // normalised, sums to 1
  double log_mass = 0.0;              // ln sum_f exp(-eta L(f)) over the net
};

/// Exponential weights over the covering net of isotonic functions with
/// values on `grid`, represented implicitly by one factor per point and level:
/// beta[s][j] = exp(-eta * loss(y_s, grid[j])) once s is labeled, 1 before.
///
/// Forward accumulators w_s^k sum the weights of prefixes f_0 <= ... <= f_s =
/// grid[k] over labeled points left of s; backward accumulators v_s^k do the
/// same for suffixes right of s. Both are swept with prefix/suffix sums so a
/// prediction costs O(TK). Each column is rescaled by its maximum during the
/// sweep and the discarded factor is kept in log space.
class NetWeightsState {
 public:
  NetWeightsState(std::size_t horizon, std::vector<double> grid, double eta, LossKind kind);

  std::size_t horizon() const { return horizon_; }
  std::size_t grid_size() const { return grid_.size() - 1; }
  std::span<const double> grid() const { return grid_; }
  double eta() const { return eta_; }
  LossKind loss_kind() const { return kind_; }

  bool labeled(std::size_t index) const { return labeled_.at(index); }
  std::size_t labeled_count() const { return labeled_count_; }
  std::span<const double> beta_row(std::size_t index) const;

  void observe(std::size_t index, double label);

  /// General-order prediction, O(TK).
  double predict(std::size_t index) const;
  NetMarginal marginal(std::size_t index) const;

  /// Prediction for reveal order 0, 1, ..., T-1: the forward accumulators
  /// are cached across rounds and the backward ones are the closed form
  /// C(T - 1 - t + K - k, K - k). O(K) per round.
  double predict_isotonic_fast(std::size_t t);
  NetMarginal marginal_isotonic_fast(std::size_t t);

  /// Inner-loop iterations spent by the last fast-path call.
  std::size_t last_fast_operations() const { return last_fast_ops_; }

 private:
  double mean_of(const NetMarginal& m) const;

  std::size_t horizon_;
  std::vector<double> grid_;
  double eta_;
  LossKind kind_;
  std::vector<double> beta_;  // horizon x levels, row-major
  std::vector<bool> labeled_;
  std::size_t labeled_count_ = 0;
  std::size_t labeled_prefix_ = 0;

  // Fast-path cache: normalised w at position fast_pos_ and its log scale.
  std::vector<double> fast_w_;
  double fast_log_scale_ = 0.0;
  std::size_t fast_pos_ = 0;
  std::size_t last_fast_ops_ = 0;
};

/// Exact exponentially weighted prediction by enumerating every member of
/// the net. Only for small nets (at most 1e6 members).
double ew_net_naive_predict(std::span<const double> grid, double eta, LossKind kind,
                            std::size_t horizon,
                            std::span<const std::pair<std::size_t, double>> history,
                            std::size_t index);

struct EwNetOptions {
  std::optional<std::size_t> grid_size;  // default: tuned for the loss
  std::optional<double> eta;             // default: 1/2 squared, 1 entropic
  bool isotonic_fast = false;
};

class EwNetLearner final : public Learner {
 public:
  EwNetLearner(std::size_t horizon, LossKind kind, EwNetOptions options = {});

  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return state_.horizon(); }
  LossKind loss_kind() const override { return state_.loss_kind(); }
  std::string name() const override;
  std::optional<double> regret_bound() const override;

  const NetWeightsState& state() const { return state_; }

 private:
  NetWeightsState state_;
  bool fast_;
  bool default_eta_;
};

/// Same predictions as EwNetLearner, computed by enumeration.
class NaiveEwNetLearner final : public Learner {
 public:
  NaiveEwNetLearner(std::size_t horizon, LossKind kind, std::optional<std::size_t> grid_size = {});

  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return tracker_.horizon(); }
  LossKind loss_kind() const override { return kind_; }
  std::string name() const override { return "ew-net-naive"; }

 private:
  QueryTracker tracker_;
  LossKind kind_;
  std::vector<double> grid_;
  double eta_;
  std::vector<std::pair<std::size_t, double>> history_;
};

/// Regret guarantees of the net learners at their tuned grid sizes.
double ew_net_squared_bound(std::size_t horizon);
double ew_net_entropic_bound(std::size_t horizon);

}  // namespace oir
