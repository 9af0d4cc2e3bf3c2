#include "oir/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oir {

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::squared: return "squared";
    case LossKind::entropic: return "entropic";
    case LossKind::absolute: return "absolute";
  }
  return "unknown";
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "squared") return LossKind::squared;
  if (name == "entropic") return LossKind::entropic;
  if (name == "absolute") return LossKind::absolute;
  throw std::invalid_argument("unknown loss kind '" + std::string(name) +
                              "' (valid: squared, entropic, absolute)");
}

namespace {

void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(v));
  }
}

// -y log p with 0 log 0 = 0.
double cross_term(double y, double p) {
  if (y == 0.0) return 0.0;
  if (p == 0.0) throw InfiniteLossError("entropic loss is infinite at a boundary prediction");
  return -y * std::log(p);
}

}  // namespace

double loss(LossKind kind, double y, double prediction) {
  require_unit(y, "label");
  require_unit(prediction, "prediction");
  switch (kind) {
    case LossKind::squared: {
      const double d = y - prediction;
      return d * d;
    }
    case LossKind::entropic:
      return cross_term(y, prediction) + cross_term(1.0 - y, 1.0 - prediction);
    case LossKind::absolute:
      return std::abs(y - prediction);
  }
  throw std::logic_error("unhandled loss kind");
}

double loss_gradient(LossKind kind, double y, double prediction) {
  switch (kind) {
    case LossKind::squared:
      return 2.0 * (prediction - y);
    case LossKind::entropic:
      if (prediction <= 0.0 || prediction >= 1.0) {
        throw InfiniteLossError("entropic gradient undefined at the boundary");
      }
      return -y / prediction + (1.0 - y) / (1.0 - prediction);
    case LossKind::absolute:
      if (prediction > y) return 1.0;
      if (prediction < y) return -1.0;
      return 0.0;
  }
  throw std::logic_error("unhandled loss kind");
}

bool is_non_decreasing(std::span<const double> values) {
  return std::is_sorted(values.begin(), values.end());
}

IsotonicFunction::IsotonicFunction(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) require_unit(v, "isotonic function value");
  if (!is_non_decreasing(values_)) {
    throw std::invalid_argument("isotonic function values must be non-decreasing");
  }
}

IsotonicFunction IsotonicFunction::constant(std::size_t size, double value) {
  return IsotonicFunction(std::vector<double>(size, value));
}

IsotonicFunction IsotonicFunction::diagonal(std::size_t size) {
  std::vector<double> v(size);
  for (std::size_t t = 0; t < size; ++t) {
    v[t] = static_cast<double>(t + 1) / static_cast<double>(size);
  }
  return IsotonicFunction(std::move(v));
}

RevealOrder::RevealOrder(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::vector<bool> seen(indices_.size(), false);
  for (std::size_t i : indices_) {
    if (i >= indices_.size() || seen[i]) {
      throw std::invalid_argument("reveal order must be a permutation of 0..T-1");
    }
    seen[i] = true;
  }
}

RevealOrder RevealOrder::isotonic(std::size_t size) {
  std::vector<std::size_t> idx(size);
  for (std::size_t t = 0; t < size; ++t) idx[t] = t;
  return RevealOrder(std::move(idx));
}

RevealOrder RevealOrder::antitonic(std::size_t size) {
  std::vector<std::size_t> idx(size);
  for (std::size_t t = 0; t < size; ++t) idx[t] = size - 1 - t;
  return RevealOrder(std::move(idx));
}

LabelSequence::LabelSequence(std::vector<double> labels, bool noise_free)
    : labels_(std::move(labels)), noise_free_(noise_free) {
  for (double y : labels_) require_unit(y, "label");
  if (noise_free_ && !is_non_decreasing(labels_)) {
    throw std::invalid_argument("noise-free labels must be non-decreasing in position");
  }
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt covering_net_size(std::size_t horizon, std::size_t grid_size) {
  return binomial(static_cast<unsigned>(horizon + grid_size), static_cast<unsigned>(grid_size));
}

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw std::invalid_argument("log_binomial requires k <= n");
  k = std::min(k, n - k);
  double acc = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    acc += std::log(static_cast<double>(n - k + i) / static_cast<double>(i));
  }
  return acc;
}

namespace {

std::size_t ceil_at_least_one(double x) {
  const auto k = static_cast<std::size_t>(std::ceil(x));
  return std::max<std::size_t>(k, 1);
}

}  // namespace

std::size_t tune_k_squared(std::size_t horizon) {
  const double t = static_cast<double>(horizon);
  return ceil_at_least_one(std::cbrt(t / (4.0 * std::log(t + 1.0))));
}

std::size_t tune_k_entropic(std::size_t horizon) {
  const double t = static_cast<double>(horizon);
  const double c = 2.0 * (2.0 - std::numbers::sqrt2) * std::numbers::pi * std::numbers::pi;
  return ceil_at_least_one(std::cbrt(c * t / std::log(t + 1.0)));
}

}  // namespace oir
