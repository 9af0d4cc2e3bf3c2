#include "oir/isotonic.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace oir {

IsotonicFunction PavaFit::clipped() const {
  std::vector<double> v(fit.size());
  std::transform(fit.begin(), fit.end(), v.begin(),
                 [](double x) { return std::clamp(x, 0.0, 1.0); });
  return IsotonicFunction(std::move(v));
}

PavaFit pava(std::span<const double> labels, std::span<const double> weights) {
  if (labels.empty()) throw std::invalid_argument("pava: empty input");
  if (labels.size() != weights.size()) {
    throw std::invalid_argument("pava: labels and weights differ in length");
  }

  // Stack of blocks; block values stay strictly increasing after every push.
  std::vector<LevelSet> blocks;
  blocks.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!(weights[i] > 0.0)) throw std::invalid_argument("pava: weights must be positive");
    LevelSet cur{i, i + 1, labels[i], weights[i]};
    while (!blocks.empty() && blocks.back().value >= cur.value) {
      const LevelSet& prev = blocks.back();
      const double w = prev.weight + cur.weight;
      cur.value = (prev.weight * prev.value + cur.weight * cur.value) / w;
      cur.weight = w;
      cur.begin = prev.begin;
      blocks.pop_back();
    }
    blocks.push_back(cur);
  }

  PavaFit out;
  out.fit.resize(labels.size());
  for (const LevelSet& b : blocks) {
    std::fill(out.fit.begin() + static_cast<std::ptrdiff_t>(b.begin),
              out.fit.begin() + static_cast<std::ptrdiff_t>(b.end), b.value);
  }
  out.level_sets = std::move(blocks);
  return out;
}

PavaFit pava(std::span<const double> labels) {
  const std::vector<double> unit(labels.size(), 1.0);
  return pava(labels, unit);
}

double total_loss(LossKind kind, std::span<const double> labels, std::span<const double> fit) {
  if (labels.size() != fit.size()) throw std::invalid_argument("total_loss: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) acc += loss(kind, labels[i], fit[i]);
  return acc;
}

double best_isotonic_loss(std::span<const double> labels, LossKind kind) {
  switch (kind) {
    case LossKind::squared:
    case LossKind::entropic: {
      const IsotonicFunction f = pava(labels).clipped();
      return total_loss(kind, labels, f.values());
    }
    case LossKind::absolute: {
      const IsotonicFunction f = l1_isotonic(labels);
      return total_loss(kind, labels, f.values());
    }
  }
  throw std::logic_error("unhandled loss kind");
}

IsotonicFunction l1_isotonic(std::span<const double> labels) {
  if (labels.empty()) return IsotonicFunction{};
  std::vector<double> cand(labels.begin(), labels.end());
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  const std::size_t n = labels.size();
  const std::size_t m = cand.size();

  // cost[t][j]: best loss of positions 0..t with f_t = cand[j].
  // best[t][j]: min over j' <= j of cost[t][j'], argbest its smallest argmin.
  std::vector<double> cost(n * m), best(n * m);
  std::vector<std::size_t> argbest(n * m);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < m; ++j) {
      const double prefix = t == 0 ? 0.0 : best[(t - 1) * m + j];
      cost[t * m + j] = std::abs(labels[t] - cand[j]) + prefix;
      const double c = cost[t * m + j];
      if (j == 0 || c < best[t * m + j - 1]) {
        best[t * m + j] = c;
        argbest[t * m + j] = j;
      } else {
        best[t * m + j] = best[t * m + j - 1];
        argbest[t * m + j] = argbest[t * m + j - 1];
      }
    }
  }

  std::vector<double> fit(n);
  std::size_t j = argbest[(n - 1) * m + m - 1];
  for (std::size_t t = n; t-- > 0;) {
    fit[t] = cand[j];
    if (t > 0) j = argbest[(t - 1) * m + j];
  }
  return IsotonicFunction(std::move(fit));
}

IsotonicFunction project_isotonic_box(std::span<const double> v) {
  if (v.empty()) return IsotonicFunction{};
  return pava(v).clipped();
}

}  // namespace oir
