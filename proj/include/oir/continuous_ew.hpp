#pragma once

#include <cstddef>
#include <string>

#include "oir/learner.hpp"

namespace oir {

/// Exponential weights with the uniform (Lebesgue) prior over all isotonic
/// functions, in the one scenario where its marginal has a closed form:
/// positions revealed in order 1..T with every label equal to 0. Trial `t`
/// is 1-based. The prediction is the mean of the density
/// phi(z) = (1 - z)^(T - t) (G(z))^(t - 1), G(z) = sqrt(pi/2) erf(z / sqrt 2),
/// evaluated by adaptive Gauss-Kronrod quadrature on a log-shifted integrand.
double continuous_ew_predict(std::size_t t, std::size_t horizon);

class ContinuousEwLearner final : public Learner {
 public:
  explicit ContinuousEwLearner(std::size_t horizon);

  /// Throws std::domain_error when the game leaves the all-zeros,
  /// isotonic-order scenario.
  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return horizon_; }
  LossKind loss_kind() const override { return LossKind::squared; }
  std::string name() const override { return "continuous-ew"; }

 private:
  std::size_t horizon_;
  std::size_t next_ = 0;
  bool predicted_ = false;
};

}  // namespace oir
