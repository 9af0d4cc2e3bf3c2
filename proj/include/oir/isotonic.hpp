#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oir/core.hpp"

namespace oir {

/// Half-open block [begin, end) of positions on which a fit is constant.
struct LevelSet {
  std::size_t begin = 0;
  std::size_t end = 0;
  double value = 0.0;
  double weight = 0.0;
};

/// Weighted isotonic least-squares fit. `fit` is not clipped, so its entries
/// stay inside the hull of the targets but not necessarily inside [0, 1].
struct PavaFit {
  std::vector<double> fit;
  std::vector<LevelSet> level_sets;

  IsotonicFunction clipped() const;
};

/// Pool Adjacent Violators: the minimizer of sum_t w_t (y_t - f_t)^2 over
/// non-decreasing f. Linear time, single left-to-right pass with a block stack.
PavaFit pava(std::span<const double> labels, std::span<const double> weights);
PavaFit pava(std::span<const double> labels);

/// Loss of the best isotonic function for the labels (indexed by position).
/// Squared and entropic share the PAVA fit; absolute uses the L1 fit.
double best_isotonic_loss(std::span<const double> labels, LossKind kind);

/// The pointwise-smallest minimizer of sum_t |y_t - f_t| over non-decreasing f,
/// searched over the distinct label values.
IsotonicFunction l1_isotonic(std::span<const double> labels);

/// Euclidean projection of an arbitrary vector onto F (unit-weight PAVA, then
/// clip to [0, 1]).
IsotonicFunction project_isotonic_box(std::span<const double> v);

double total_loss(LossKind kind, std::span<const double> labels, std::span<const double> fit);

}  // namespace oir
