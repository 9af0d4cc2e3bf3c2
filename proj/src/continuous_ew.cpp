#include "oir/continuous_ew.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oir {

namespace {

constexpr int kPanels = 64;
constexpr double kRelTol = 1e-11;

struct LogDensity {
  double right_power;  // T - t
  double left_power;   // t - 1

  double operator()(double z) const {
    double acc = 0.0;
    if (right_power > 0.0) acc += right_power * std::log1p(-z);
    if (left_power > 0.0) {
      const double g = std::sqrt(std::numbers::pi / 2.0) * std::erf(z / std::numbers::sqrt2);
      acc += left_power * std::log(g);
    }
    return acc;
  }
};

struct Mode {
  double at;
  double value;
};

// log phi is concave, so ternary search finds the mode.
Mode find_mode(const LogDensity& f) {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (f(a) < f(b)) lo = a; else hi = b;
  }
  const double at = 0.5 * (lo + hi);
  return {at, f(at)};
}

// Panels whose density never exceeds exp(kSkipLog) relative to the mode are
// dropped; by concavity the panel maximum sits at the endpoint nearest the mode.
constexpr double kSkipLog = -60.0;

template <class F>
double integrate_unit(F f, const LogDensity& log_phi, const Mode& mode) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double a = static_cast<double>(p) / kPanels;
    const double b = static_cast<double>(p + 1) / kPanels;
    const double nearest = std::clamp(mode.at, a, b);
    if (log_phi(nearest) - mode.value < kSkipLog) continue;
    total += Quad::integrate(f, a, b, 10, kRelTol);
  }
  return total;
}

}  // namespace

double continuous_ew_predict(std::size_t t, std::size_t horizon) {
  if (t < 1 || t > horizon) throw std::out_of_range("continuous_ew_predict: need 1 <= t <= T");
  const LogDensity log_phi{static_cast<double>(horizon - t), static_cast<double>(t - 1)};
  const Mode mode = find_mode(log_phi);
  auto density = [&](double z) {
    const double v = log_phi(z) - mode.value;
    return std::isfinite(v) ? std::exp(v) : 0.0;
  };
  const double mass = integrate_unit(density, log_phi, mode);
  const double first = integrate_unit([&](double z) { return z * density(z); }, log_phi, mode);
  return std::clamp(first / mass, 0.0, 1.0);
}

ContinuousEwLearner::ContinuousEwLearner(std::size_t horizon) : horizon_(horizon) {
  if (horizon == 0) throw std::invalid_argument("horizon must be positive");
}

double ContinuousEwLearner::predict(std::size_t index) {
  if (index != next_ || predicted_) {
    throw std::domain_error(
        "continuous EW is only available for the reveal order 1..T with all-zero labels");
  }
  predicted_ = true;
  return continuous_ew_predict(index + 1, horizon_);
}

void ContinuousEwLearner::observe(std::size_t index, double label) {
  if (index != next_ || !predicted_) throw std::logic_error("observe must follow predict");
  if (label != 0.0) {
    throw std::domain_error("continuous EW closed form requires every label to be 0");
  }
  predicted_ = false;
  ++next_;
}

}  // namespace oir
