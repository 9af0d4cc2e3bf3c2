#include "oir/learner.hpp"

#include <stdexcept>
#include <string>

namespace oir {

void QueryTracker::require_unlabeled(std::size_t index) const {
  if (index >= labeled_.size()) {
    throw std::out_of_range("position " + std::to_string(index) + " out of range");
  }
  if (labeled_[index]) {
    throw std::logic_error("position " + std::to_string(index) + " was already labeled");
  }
}

void QueryTracker::mark(std::size_t index) {
  require_unlabeled(index);
  labeled_[index] = true;
  ++count_;
}

ConstantLearner::ConstantLearner(std::size_t horizon, double value, LossKind kind)
    : tracker_(horizon), value_(value), kind_(kind) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("constant prediction must be in [0, 1]");
  }
}

double ConstantLearner::predict(std::size_t index) {
  tracker_.require_unlabeled(index);
  return value_;
}

void ConstantLearner::observe(std::size_t index, double) { tracker_.mark(index); }

}  // namespace oir
