#include "oir/ew_net.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oir {

std::vector<double> uniform_grid(std::size_t grid_size) {
  if (grid_size == 0) throw std::invalid_argument("grid size K must be at least 1");
  std::vector<double> g(grid_size + 1);
  for (std::size_t k = 0; k <= grid_size; ++k) {
    g[k] = static_cast<double>(k) / static_cast<double>(grid_size);
  }
  return g;
}

std::vector<double> ew_entropic_grid(std::size_t grid_size) {
  if (grid_size == 0) throw std::invalid_argument("grid size K must be at least 1");
  const double k_total = static_cast<double>(grid_size);
  std::vector<double> g(grid_size + 1);
  const double edge = std::numbers::pi / (4.0 * k_total);
  g.front() = std::pow(std::sin(edge), 2);
  for (std::size_t k = 1; k < grid_size; ++k) {
    g[k] = std::pow(std::sin(std::numbers::pi * static_cast<double>(k) / (2.0 * k_total)), 2);
  }
  g.back() = std::pow(std::cos(edge), 2);
  return g;
}

NetWeightsState::NetWeightsState(std::size_t horizon, std::vector<double> grid, double eta,
                                 LossKind kind)
    : horizon_(horizon),
      grid_(std::move(grid)),
      eta_(eta),
      kind_(kind),
      beta_(horizon * grid_.size(), 1.0),
      labeled_(horizon, false),
      fast_w_(grid_.size(), 1.0) {
  if (horizon_ == 0) throw std::invalid_argument("horizon must be positive");
  if (grid_.size() < 2) throw std::invalid_argument("grid needs at least two levels");
  if (!std::is_sorted(grid_.begin(), grid_.end()) || grid_.front() < 0.0 || grid_.back() > 1.0) {
    throw std::invalid_argument("grid must be non-decreasing inside [0, 1]");
  }
  if (!(eta_ >= 0.0)) throw std::invalid_argument("eta must be non-negative");
  if (kind_ == LossKind::absolute) {
    throw std::invalid_argument("the covering-net learner supports squared and entropic loss");
  }
}

std::span<const double> NetWeightsState::beta_row(std::size_t index) const {
  if (index >= horizon_) throw std::out_of_range("position out of range");
  return std::span<const double>(beta_).subspan(index * grid_.size(), grid_.size());
}

void NetWeightsState::observe(std::size_t index, double label) {
  if (index >= horizon_) throw std::out_of_range("position out of range");
  if (labeled_[index]) throw std::logic_error("position already labeled");
  const std::size_t levels = grid_.size();
  for (std::size_t j = 0; j < levels; ++j) {
    beta_[index * levels + j] = std::exp(-eta_ * loss(kind_, label, grid_[j]));
  }
  labeled_[index] = true;
  ++labeled_count_;
  while (labeled_prefix_ < horizon_ && labeled_[labeled_prefix_]) ++labeled_prefix_;
}

namespace {

// Divides `col` by its maximum and returns the log of that factor.
double rescale(std::vector<double>& col) {
  const double m = *std::max_element(col.begin(), col.end());
  if (!(m > 0.0)) throw std::runtime_error("net weights vanished");
  for (double& x : col) x /= m;
  return std::log(m);
}

NetMarginal combine(std::span<const double> w, double log_w, std::span<const double> v,
                    double log_v) {
  NetMarginal out;
  out.level_weights.resize(w.size());
  double total = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    out.level_weights[k] = w[k] * v[k];
    total += out.level_weights[k];
  }
  for (double& x : out.level_weights) x /= total;
  out.log_mass = std::log(total) + log_w + log_v;
  return out;
}

}  // namespace

NetMarginal NetWeightsState::marginal(std::size_t index) const {
  if (index >= horizon_) throw std::out_of_range("position out of range");
  if (labeled_[index]) throw std::logic_error("cannot predict a labeled position");
  const std::size_t levels = grid_.size();

  // w_{s+1}^k = w_{s+1}^{k-1} + beta_s^k w_s^k, starting from w_0 = 1.
  std::vector<double> w(levels, 1.0);
  double log_w = 0.0;
  for (std::size_t s = 0; s < index; ++s) {
    const double* b = &beta_[s * levels];
    double run = 0.0;
    for (std::size_t k = 0; k < levels; ++k) {
      run += b[k] * w[k];
      w[k] = run;
    }
    log_w += rescale(w);
  }

  // v_s^k = v_s^{k+1} + beta_{s+1}^k v_{s+1}^k, starting from v_{T-1} = 1.
  std::vector<double> v(levels, 1.0);
  double log_v = 0.0;
  for (std::size_t s = horizon_ - 1; s > index; --s) {
    const double* b = &beta_[s * levels];
    double run = 0.0;
    for (std::size_t k = levels; k-- > 0;) {
      run += b[k] * v[k];
      v[k] = run;
    }
    log_v += rescale(v);
  }
  return combine(w, log_w, v, log_v);
}

double NetWeightsState::mean_of(const NetMarginal& m) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < grid_.size(); ++k) acc += grid_[k] * m.level_weights[k];
  return std::clamp(acc, grid_.front(), grid_.back());
}

double NetWeightsState::predict(std::size_t index) const { return mean_of(marginal(index)); }

NetMarginal NetWeightsState::marginal_isotonic_fast(std::size_t t) {
  if (t >= horizon_) throw std::out_of_range("position out of range");
  if (labeled_count_ != t || labeled_prefix_ != t) {
    throw std::logic_error("fast path requires the reveal order 0, 1, ..., T-1");
  }
  const std::size_t levels = grid_.size();
  std::size_t ops = 0;

  if (fast_pos_ > t) throw std::logic_error("fast path cache is ahead of the query");
  while (fast_pos_ < t) {
    const double* b = &beta_[fast_pos_ * levels];
    double run = 0.0;
    for (std::size_t k = 0; k < levels; ++k, ++ops) {
      run += b[k] * fast_w_[k];
      fast_w_[k] = run;
    }
    fast_log_scale_ += rescale(fast_w_);
    ++fast_pos_;
  }

  // v_t^k = C(r + m, m) with r = T-1-t, m = K-k, kept in log form and built
  // from C(r + m, m) = C(r + m - 1, m - 1) (r + m) / m.
  const std::size_t k_total = levels - 1;
  const double remaining = static_cast<double>(horizon_ - 1 - t);
  std::vector<double> log_v(levels);
  log_v[k_total] = 0.0;
  for (std::size_t m = 1; m <= k_total; ++m, ++ops) {
    const double md = static_cast<double>(m);
    log_v[k_total - m] = log_v[k_total - m + 1] + std::log((remaining + md) / md);
  }
  const double log_v_max = *std::max_element(log_v.begin(), log_v.end());
  std::vector<double> v(levels);
  for (std::size_t k = 0; k < levels; ++k, ++ops) v[k] = std::exp(log_v[k] - log_v_max);

  last_fast_ops_ = ops;
  return combine(fast_w_, fast_log_scale_, v, log_v_max);
}

double NetWeightsState::predict_isotonic_fast(std::size_t t) {
  return mean_of(marginal_isotonic_fast(t));
}

namespace {

struct NaiveWalk {
  std::span<const double> grid;
  double eta;
  LossKind kind;
  std::size_t horizon;
  std::vector<double> label_at;  // NaN where unlabeled
  std::size_t index;
  std::vector<std::size_t> levels;
  double numerator = 0.0;
  double denominator = 0.0;

  void visit(std::size_t pos, std::size_t min_level, double cum_loss) {
    if (pos == horizon) {
      const double weight = std::exp(-eta * cum_loss);
      numerator += grid[levels[index]] * weight;
      denominator += weight;
      return;
    }
    for (std::size_t k = min_level; k < grid.size(); ++k) {
      levels[pos] = k;
      double add = 0.0;
      if (!std::isnan(label_at[pos])) add = loss(kind, label_at[pos], grid[k]);
      visit(pos + 1, k, cum_loss + add);
    }
  }
};

}  // namespace

double ew_net_naive_predict(std::span<const double> grid, double eta, LossKind kind,
                            std::size_t horizon,
                            std::span<const std::pair<std::size_t, double>> history,
                            std::size_t index) {
  if (grid.size() < 2) throw std::invalid_argument("grid needs at least two levels");
  if (index >= horizon) throw std::out_of_range("position out of range");
  if (covering_net_size(horizon, grid.size() - 1) > 1000000) {
    throw std::invalid_argument("net too large for enumeration (limit 1e6 members)");
  }
  NaiveWalk walk{grid, eta, kind, horizon, std::vector<double>(horizon, std::nan("")),
                 index, std::vector<std::size_t>(horizon, 0)};
  for (const auto& [i, y] : history) {
    if (i >= horizon) throw std::out_of_range("history position out of range");
    if (!std::isnan(walk.label_at[i])) throw std::invalid_argument("history repeats a position");
    walk.label_at[i] = y;
  }
  if (!std::isnan(walk.label_at[index])) {
    throw std::logic_error("cannot predict a labeled position");
  }
  walk.visit(0, 0, 0.0);
  return walk.numerator / walk.denominator;
}

namespace {

std::vector<double> default_grid(LossKind kind, std::size_t k) {
  if (kind == LossKind::entropic) {
    if (k < 2) throw std::invalid_argument("the entropic net learner needs K >= 2");
    return ew_entropic_grid(k);
  }
  return uniform_grid(k);
}

std::size_t default_k(LossKind kind, std::size_t horizon, std::optional<std::size_t> k) {
  if (k) return *k;
  return kind == LossKind::entropic ? tune_k_entropic(horizon) : tune_k_squared(horizon);
}

double default_eta(LossKind kind) { return kind == LossKind::entropic ? 1.0 : 0.5; }

}  // namespace

EwNetLearner::EwNetLearner(std::size_t horizon, LossKind kind, EwNetOptions options)
    : state_(horizon, default_grid(kind, default_k(kind, horizon, options.grid_size)),
             options.eta.value_or(default_eta(kind)), kind),
      fast_(options.isotonic_fast),
      default_eta_(!options.eta || *options.eta == default_eta(kind)) {}

double EwNetLearner::predict(std::size_t index) {
  return fast_ ? state_.predict_isotonic_fast(index) : state_.predict(index);
}

void EwNetLearner::observe(std::size_t index, double label) { state_.observe(index, label); }

std::string EwNetLearner::name() const {
  std::string n = state_.loss_kind() == LossKind::entropic ? "ew-entropic" : "ew-net";
  return fast_ ? n + "-fast" : n;
}

double ew_net_squared_bound(std::size_t horizon) {
  const double t = static_cast<double>(horizon);
  const double l = std::log(t + 1.0);
  return 3.0 / std::cbrt(4.0) * std::cbrt(t) * std::pow(l, 2.0 / 3.0) + 2.0 * l;
}

double ew_net_entropic_bound(std::size_t horizon) {
  const double t = static_cast<double>(horizon);
  const double l = std::log(t + 1.0);
  const double c = 3.0 * std::cbrt(2.0 - std::numbers::sqrt2) *
                   std::pow(std::numbers::pi, 2.0 / 3.0) / std::cbrt(4.0);
  return c * std::cbrt(t) * std::pow(l, 2.0 / 3.0) + 2.0 * l;
}

std::optional<double> EwNetLearner::regret_bound() const {
  if (!default_eta_) return std::nullopt;
  const std::size_t t = state_.horizon();
  const std::size_t k = state_.grid_size();
  const double exact_log_net = log_binomial(t + k, k);
  const double kk = static_cast<double>(k);
  if (state_.loss_kind() == LossKind::entropic) {
    if (k == tune_k_entropic(t)) return ew_net_entropic_bound(t);
    // ln|F_K| / eta plus the arcsine-grid discretisation term.
    return exact_log_net + (2.0 - std::numbers::sqrt2) * std::numbers::pi * std::numbers::pi *
                               static_cast<double>(t) / (kk * kk);
  }
  if (k == tune_k_squared(t)) return ew_net_squared_bound(t);
  return 2.0 * exact_log_net + static_cast<double>(t) / (4.0 * kk * kk);
}

NaiveEwNetLearner::NaiveEwNetLearner(std::size_t horizon, LossKind kind,
                                     std::optional<std::size_t> grid_size)
    : tracker_(horizon),
      kind_(kind),
      grid_(default_grid(kind, default_k(kind, horizon, grid_size))),
      eta_(default_eta(kind)) {}

double NaiveEwNetLearner::predict(std::size_t index) {
  tracker_.require_unlabeled(index);
  return std::clamp(ew_net_naive_predict(grid_, eta_, kind_, tracker_.horizon(), history_, index),
                    grid_.front(), grid_.back());
}

void NaiveEwNetLearner::observe(std::size_t index, double label) {
  tracker_.mark(index);
  history_.emplace_back(index, label);
}

}  // namespace oir
