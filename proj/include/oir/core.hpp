#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oir {

enum class LossKind { squared, entropic, absolute };

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view name);

/// Raised when the entropic loss is evaluated at a boundary prediction that
/// contradicts the label, e.g. y = 0.5 with a prediction of exactly 0.
class InfiniteLossError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double loss(LossKind kind, double y, double prediction);

/// Derivative of the loss in the prediction. For the absolute loss this is
/// sign(prediction - y), with 0 at prediction == y.
double loss_gradient(LossKind kind, double y, double prediction);

/// A non-decreasing vector with entries in [0, 1].
class IsotonicFunction {
 public:
  IsotonicFunction() = default;
  explicit IsotonicFunction(std::vector<double> values);

  /// Constant function equal to `value` at every position.
  static IsotonicFunction constant(std::size_t size, double value);
  /// f_t = t / T for positions t = 1..T.
  static IsotonicFunction diagonal(std::size_t size);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// A permutation of the positions 0..T-1 giving the order of queries.
class RevealOrder {
 public:
  RevealOrder() = default;
  explicit RevealOrder(std::vector<std::size_t> indices);

  static RevealOrder isotonic(std::size_t size);
  static RevealOrder antitonic(std::size_t size);

  std::size_t size() const { return indices_.size(); }
  std::size_t operator[](std::size_t t) const { return indices_[t]; }
  std::span<const std::size_t> indices() const { return indices_; }

 private:
  std::vector<std::size_t> indices_;
};

/// Labels indexed by position. When `noise_free` is set the labels must be
/// non-decreasing in position.
class LabelSequence {
 public:
  LabelSequence() = default;
  explicit LabelSequence(std::vector<double> labels, bool noise_free = false);

  std::size_t size() const { return labels_.size(); }
  double operator[](std::size_t i) const { return labels_[i]; }
  std::span<const double> labels() const { return labels_; }
  bool noise_free() const { return noise_free_; }

 private:
  std::vector<double> labels_;
  bool noise_free_ = false;
};

bool is_non_decreasing(std::span<const double> values);

using BigInt = boost::multiprecision::cpp_int;

/// Exact binomial coefficient C(n, k).
BigInt binomial(unsigned n, unsigned k);

/// |F_K| = C(T + K, K): isotonic functions on T points with values in
/// {0, 1/K, ..., 1}.
BigInt covering_net_size(std::size_t horizon, std::size_t grid_size);

/// ln C(n, k), accumulated as a sum of logs of the multiplicative formula.
double log_binomial(std::size_t n, std::size_t k);

/// ceil((T / (4 ln(T + 1)))^(1/3)), at least 1.
std::size_t tune_k_squared(std::size_t horizon);

/// ceil((2 (2 - sqrt 2) pi^2 T / ln(T + 1))^(1/3)), at least 1.
std::size_t tune_k_entropic(std::size_t horizon);

}  // namespace oir
