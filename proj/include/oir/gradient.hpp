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

// Exponentiated gradient on the increments p = (f_1 - f_0, ..., f_{T+1} - f_T)
// with f_0 = 0 and f_{T+1} = 1, so p lives on the (T+1)-simplex and the
// prediction at 0-based position i is p_0 + ... + p_i.

struct EgStep {
  double prediction;
  std::vector<double> weights;
};

/// Predicts at `index`, then applies the multiplicative update for label `y`.
/// Throws if `p` is not normalised to within 1e-9.
EgStep eg_step(std::span<const double> p, std::size_t index, double y, double eta,
               LossKind kind = LossKind::squared);

/// 2 sqrt(ln(T+1)) / (sqrt(T/2) + sqrt(ln(T+1))).
double eg_default_eta_squared(std::size_t horizon);
/// sqrt(8 ln(T+1) / T).
double eg_default_eta_absolute(std::size_t horizon);

double eg_squared_bound(std::size_t horizon);
double eg_absolute_bound(std::size_t horizon);

class EgLearner final : public Learner {
 public:
  EgLearner(std::size_t horizon, LossKind kind, std::optional<double> eta = {});

  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return tracker_.horizon(); }
  LossKind loss_kind() const override { return kind_; }
  std::string name() const override { return kind_ == LossKind::absolute ? "eg-abs" : "eg"; }
  std::optional<double> regret_bound() const override;

  std::span<const double> weights() const { return p_; }
  double eta() const { return eta_; }

 private:
  QueryTracker tracker_;
  LossKind kind_;
  double eta_;
  bool tuned_;
  std::vector<double> p_;
};

struct OgdStep {
  double prediction;
  IsotonicFunction function;
};

/// Reads f at `index`, descends 2 eta (prediction - y) on that coordinate and
/// projects back onto the isotonic box.
OgdStep ogd_step(const IsotonicFunction& f, std::size_t index, double y, double eta);

class OgdLearner final : public Learner {
 public:
  OgdLearner(IsotonicFunction init, double eta);

  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return tracker_.horizon(); }
  LossKind loss_kind() const override { return LossKind::squared; }
  std::string name() const override { return "ogd"; }

  const IsotonicFunction& function() const { return f_; }

 private:
  QueryTracker tracker_;
  IsotonicFunction f_;
  double eta_;
};

/// argmin over F of lambda ||f - f0||^2 + sum over history of (f_i - y_i)^2,
/// solved as a weighted isotonic fit with weight lambda + n_i and target
/// (lambda f0_i + n_i y_i) / (lambda + n_i), then clipped.
IsotonicFunction ftrl_predict(const IsotonicFunction& f0, double lambda,
                              std::span<const std::pair<std::size_t, double>> history);

class FtrlLearner final : public Learner {
 public:
  FtrlLearner(IsotonicFunction f0, double lambda);

  double predict(std::size_t index) override;
  void observe(std::size_t index, double label) override;
  std::size_t horizon() const override { return tracker_.horizon(); }
  LossKind loss_kind() const override { return LossKind::squared; }
  std::string name() const override { return "ftrl"; }

 private:
  QueryTracker tracker_;
  IsotonicFunction f0_;
  double lambda_;
  std::vector<std::pair<std::size_t, double>> history_;
};

}  // namespace oir
