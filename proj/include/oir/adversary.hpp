#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oir/core.hpp"
#include "oir/minimax.hpp"

namespace oir {

/// Adversary side of the protocol: next_index() picks an unlabeled position,
/// then label(prediction) reveals its label after seeing the prediction.
class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual std::size_t horizon() const = 0;
  virtual std::size_t next_index() = 0;
  virtual double label(double prediction) = 0;
  virtual std::string name() const = 0;
  /// True when every label sequence this adversary can produce is isotonic.
  virtual bool noise_free() const = 0;
};

/// Labels and reveal order fixed in advance.
struct ObliviousGame {
  LabelSequence labels;
  RevealOrder order;
};

class ObliviousAdversary final : public Adversary {
 public:
  ObliviousAdversary(ObliviousGame game, std::string name);

  std::size_t horizon() const override { return game_.labels.size(); }
  std::size_t next_index() override;
  double label(double prediction) override;
  std::string name() const override { return name_; }
  bool noise_free() const override { return game_.labels.noise_free(); }

  const ObliviousGame& game() const { return game_; }

 private:
  ObliviousGame game_;
  std::string name_;
  std::size_t t_ = 0;
  bool awaiting_label_ = false;
};

/// p_{k,0} = 1/4 + (k-1)/(2K), p_{k,1} = 1/4 + k/(2K) for segments k = 1..K,
/// picked by omega.
std::vector<double> lower_bound_probabilities(std::size_t segments, const std::vector<bool>& omega);

/// Segment (1-based) of 1-based position t: ceil(t / m) with m = floor(T/K),
/// capped at K so the last segment absorbs any remainder.
std::size_t lower_bound_segment(std::size_t t, std::size_t horizon, std::size_t segments);

/// round(T^(1/3)), at least 1.
std::size_t lower_bound_default_segments(std::size_t horizon);

struct LowerBoundParams {
  std::optional<std::size_t> segments;
  std::optional<std::vector<bool>> omega;  // drawn from the seed when absent
};

/// Segment-wise Bernoulli labels revealed in isotonic order.
ObliviousGame lower_bound_sequence(std::size_t horizon, const LowerBoundParams& params,
                                   std::uint64_t seed);

enum class KillerVariant { zeros, ones };

/// zeros: order 1..T with labels 0; ones: order T..1 with labels 1.
ObliviousGame gd_killer(std::size_t horizon, KillerVariant variant);

/// Sorted uniform draws.
LabelSequence random_isotonic(std::size_t horizon, std::uint64_t seed);
/// random_isotonic plus Gaussian noise truncated at 3 sigma, clipped to [0, 1].
LabelSequence noisy_isotonic(std::size_t horizon, double sigma, std::uint64_t seed);
RevealOrder random_order(std::size_t horizon, std::uint64_t seed);

/// Queries the midpoint of the active range and labels it with whichever
/// range endpoint is farther from the prediction (ties go to the upper end).
/// The half that the label pins down is then filled with the forced constant,
/// and the other half becomes the active range.
class MidpointSplitter final : public Adversary {
 public:
  explicit MidpointSplitter(std::size_t horizon);

  std::size_t horizon() const override { return horizon_; }
  std::size_t next_index() override;
  double label(double prediction) override;
  std::string name() const override { return "midpoint"; }
  bool noise_free() const override { return true; }

 private:
  std::size_t horizon_;
  std::size_t lo_ = 0;
  std::size_t hi_;
  std::deque<std::pair<std::size_t, double>> forced_;
  std::optional<std::pair<std::size_t, double>> current_forced_;
  std::size_t mid_ = 0;
  bool awaiting_label_ = false;
};

/// Isotonic-order adversary: with last label c and n points remaining, picks
/// y in {c, 1} maximising (prediction - y)^2 + alpha_{n-1} (1 - y)^2, ties to 1.
class GreedyIsotonicAdversary final : public Adversary {
 public:
  explicit GreedyIsotonicAdversary(std::size_t horizon);

  std::size_t horizon() const override { return horizon_; }
  std::size_t next_index() override;
  double label(double prediction) override;
  std::string name() const override { return "greedy-iso"; }
  bool noise_free() const override { return true; }

 private:
  std::size_t horizon_;
  std::vector<double> alpha_;
  std::size_t t_ = 0;
  double last_ = 0.0;
  bool awaiting_label_ = false;
};

/// Any-order adversary playing the maximising split of the leftmost open
/// segment and the boundary label that maximises the loss-plus-value.
class OptimalAnyOrderAdversary final : public Adversary {
 public:
  explicit OptimalAnyOrderAdversary(std::size_t horizon);

  std::size_t horizon() const override { return state_.horizon(); }
  std::size_t next_index() override;
  double label(double prediction) override;
  std::string name() const override { return "optimal-any"; }
  bool noise_free() const override { return true; }

 private:
  SegmentState state_;
  std::vector<double> beta_;
  std::optional<std::size_t> current_;
};

}  // namespace oir
