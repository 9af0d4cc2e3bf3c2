#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oir/learner.hpp"

namespace oir {

/// A revealed label contradicted the noise-free promise.
class NoiseFreeViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Any reveal order, noise-free labels.
//
// The value of a run of n unlabeled consecutive points bounded by [u, v] is
// beta_n (v - u)^2. Querying the point with k unknowns on its left and
// n - k on its right (n + 1 in total) is worth beta_{n,k} (v - u)^2.

/// beta_{n,k} as a function of beta_k (left run) and beta_{n-k} (right run).
double minimax_beta_split(double beta_left, double beta_right);

/// beta_0, ..., beta_T with beta_0 = 0 and beta_{n+1} = max_k beta_{n,k}.
std::vector<double> minimax_beta_table(std::size_t horizon);

/// Minimax prediction for a point splitting a segment [u, v] into runs with
/// coefficients beta_left and beta_right:
///   v if beta_left - beta_right > 1, u if < -1, otherwise
///   (u + v)/2 + (v - u)/2 (beta_left - beta_right).
double minimax_split_prediction(double lower, double upper, double beta_left, double beta_right);

/// Maximal run of unlabeled positions [begin, end), bounded by the nearest
/// revealed labels (0 and 1 past the ends).
struct Segment {
  std::size_t begin = 0;
  std::size_t end = 0;
  double lower = 0.0;
  double upper = 1.0;

  std::size_t size() const { return end - begin; }
};

class SegmentState {
 public:
  explicit SegmentState(std::size_t horizon);

  std::size_t horizon() const { return horizon_; }
  bool revealed(std::size_t index) const;
  /// The segment containing an unlabeled position.
  Segment segment_of(std::size_t index) const;
  /// All non-empty segments, left to right.
  std::vector<Segment> segments() const;
  /// Records y at `index`; throws NoiseFreeViolation if y is outside the
  /// segment's [lower, upper] (closed interval).
  void reveal(std::size_t index, double label);

 private:
  std::size_t horizon_;
  // Keyed by position + 1; key 0 holds the virtual label 0, key T + 1 the
  // virtual label 1.
  std::map<std::size_t, double> labels_;
};

class MinimaxAnyOrderLearner final : public Learner {
 public:
  explicit MinimaxAnyOrderLearner(std::size_t horizon);

  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return state_.horizon(); }
  LossKind loss_kind() const override { return LossKind::squared; }
  std::string name() const override { return "minimax-any"; }
  /// (1/4) log2(T + 1).
  std::optional<double> regret_bound() const override;

  const SegmentState& state() const { return state_; }
  std::span<const double> beta_table() const { return beta_; }

 private:
  SegmentState state_;
  std::vector<double> beta_;
};

// ---------------------------------------------------------------------------
// Isotonic reveal order, noise-free labels.

/// alpha_0 = 0, alpha_1 = 1/4, alpha_t = ((alpha_{t-1} + 1) / 2)^2; entries
/// 0..T.
std::vector<double> minimax_alpha_table(std::size_t horizon);

/// (c + 1)/2 + alpha_{n-1} (c - 1)/2 for last label c and n >= 1 remaining
/// points (the current one included).
double minimax_isotonic_predict(double last_label, std::size_t remaining,
                                std::span<const double> alpha_table);

class MinimaxIsotonicLearner final : public Learner {
 public:
  explicit MinimaxIsotonicLearner(std::size_t horizon);

  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return horizon_; }
  LossKind loss_kind() const override { return LossKind::squared; }
  std::string name() const override { return "minimax-iso"; }
  /// alpha_T.
  std::optional<double> regret_bound() const override;

  std::span<const double> alpha_table() const { return alpha_; }

 private:
  std::size_t horizon_;
  std::vector<double> alpha_;
  std::size_t next_ = 0;
  double last_ = 0.0;
};

}  // namespace oir
