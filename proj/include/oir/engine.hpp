#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oir/adversary.hpp"
#include "oir/core.hpp"
#include "oir/learner.hpp"

namespace oir {

/// Predictions are clamped to [eps, 1 - eps] before scoring under the
/// entropic loss.
inline constexpr double kEntropicClamp = 1e-9;
/// Slack allowed when comparing a regret against its bound.
inline constexpr double kBoundTolerance = 1e-9;

struct Trial {
  std::size_t index = 0;
  double prediction = 0.0;
  double label = 0.0;
  double loss = 0.0;
};

using GameTranscript = std::vector<Trial>;

struct GameResult {
  GameTranscript transcript;
  double learner_loss = 0.0;
  double oracle_loss = 0.0;
  double regret = 0.0;
  std::optional<double> bound;
  bool bound_satisfied = true;
};

/// Raised when a player breaks the protocol (repeated index, prediction out
/// of range, mismatched horizons).
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

GameResult run_game(Learner& learner, Adversary& adversary, LossKind kind);

/// Labels indexed by position, rebuilt from a complete transcript.
std::vector<double> labels_by_position(const GameTranscript& transcript);

struct DiscretizationGap {
  double gap = 0.0;               // L(f+) - L(f*)
  double squared_distance = 0.0;  // sum (f+ - f*)^2
};

/// f* is the PAVA fit of the labels, f+ its rounding (half-up) onto the grid
/// {0, 1/K, ..., 1}.
DiscretizationGap discretization_gap(std::span<const double> labels, std::size_t grid_size);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // sum of squared residuals in log-log space
  std::size_t points = 0;
};

/// Least squares of ln y on ln x; points with x <= 0 or y <= 0 are skipped.
/// Fewer than two usable points give slope 0 with points < 2.
SlopeFit fit_loglog_slope(std::span<const double> x, std::span<const double> y);

using LearnerFactory = std::function<std::unique_ptr<Learner>(std::size_t horizon, std::uint64_t seed)>;
using AdversaryFactory =
    std::function<std::unique_ptr<Adversary>(std::size_t horizon, std::uint64_t seed)>;

struct NamedLearner {
  std::string name;
  LearnerFactory make;
};

struct NamedAdversary {
  std::string name;
  AdversaryFactory make;
};

struct SweepCell {
  std::size_t horizon = 0;
  std::string learner;
  std::string adversary;
  std::uint64_t seed = 0;
  double learner_loss = 0.0;
  double oracle_loss = 0.0;
  double regret = 0.0;
  std::optional<double> bound;
  bool bound_satisfied = true;
};

struct ExponentFit {
  std::string learner;
  std::string adversary;
  SlopeFit max_fit;   // max regret over seeds per T
  SlopeFit mean_fit;  // mean regret over seeds per T
  std::vector<std::size_t> horizons;
  std::vector<double> max_regret;
  std::vector<double> mean_regret;
};

struct SweepReport {
  std::vector<SweepCell> cells;  // sorted by (learner, adversary, T, seed)
  std::vector<ExponentFit> fits;
  std::size_t violations = 0;
};

struct SweepConfig {
  std::vector<NamedLearner> learners;
  std::vector<NamedAdversary> adversaries;
  std::vector<std::size_t> horizons;  // ascending
  std::vector<std::uint64_t> seeds;
  LossKind kind = LossKind::squared;
  unsigned threads = 0;  // 0: hardware concurrency
};

SweepReport regret_curve(const SweepConfig& config);

}  // namespace oir
