#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "oir/core.hpp"

namespace oir {

/// Online learner for the fixed-design protocol. Positions are 0-based. For
/// each trial the driver calls predict(i) once, then observe(i, y); a
/// position is never queried twice.
class Learner {
 public:
  virtual ~Learner() = default;

  virtual double predict(std::size_t index) = 0;
  virtual void observe(std::size_t index, double label) = 0;

  virtual std::size_t horizon() const = 0;
  virtual LossKind loss_kind() const = 0;
  virtual std::string name() const = 0;

  /// Worst-case regret guarantee for a game of length horizon(), when the
  /// learner carries one.
  virtual std::optional<double> regret_bound() const { return std::nullopt; }
};

/// Tracks which positions were labeled; shared protocol checks for learners.
class QueryTracker {
 public:
  explicit QueryTracker(std::size_t horizon) : labeled_(horizon, false) {}

  std::size_t horizon() const { return labeled_.size(); }
  bool labeled(std::size_t index) const { return labeled_.at(index); }
  std::size_t labeled_count() const { return count_; }

  void require_unlabeled(std::size_t index) const;
  void mark(std::size_t index);

 private:
  std::vector<bool> labeled_;
  std::size_t count_ = 0;
};

/// Predicts a fixed value everywhere. Used as a baseline opponent.
class ConstantLearner final : public Learner {
 public:
  ConstantLearner(std::size_t horizon, double value, LossKind kind = LossKind::squared);

  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return tracker_.horizon(); }
  LossKind loss_kind() const override { return kind_; }
  std::string name() const override { return "constant"; }

 private:
  QueryTracker tracker_;
  double value_;
  LossKind kind_;
};

}  // namespace oir
