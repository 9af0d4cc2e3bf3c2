#include "oir/registry.hpp"

#include <algorithm>
#include <stdexcept>

#include "oir/continuous_ew.hpp"
#include "oir/ew_net.hpp"
#include "oir/gradient.hpp"
#include "oir/minimax.hpp"

namespace oir {

namespace {

std::string joined(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ", ") + n;
  return s;
}

void require_kind(const std::string& name, LossKind kind, std::initializer_list<LossKind> allowed) {
  if (std::find(allowed.begin(), allowed.end(), kind) == allowed.end()) {
    throw std::invalid_argument("learner " + name + " does not support " +
                                std::string(to_string(kind)) + " loss");
  }
}

IsotonicFunction initial_function(const std::string& init, std::size_t horizon) {
  if (init == "diagonal") return IsotonicFunction::diagonal(horizon);
  if (init == "zero") return IsotonicFunction::constant(horizon, 0.0);
  if (init == "half") return IsotonicFunction::constant(horizon, 0.5);
  throw std::invalid_argument("unknown initial function '" + init + "' (diagonal, zero, half)");
}

RevealOrder resolve_order(const ComponentOptions& opts, std::size_t horizon, std::uint64_t seed,
                          RevealOrder fallback) {
  if (!opts.order) return fallback;
  if (*opts.order == "isotonic") return RevealOrder::isotonic(horizon);
  if (*opts.order == "antitonic") return RevealOrder::antitonic(horizon);
  if (*opts.order == "random") return random_order(horizon, seed);
  throw std::invalid_argument("unknown order '" + *opts.order + "' (isotonic, antitonic, random)");
}

std::unique_ptr<Adversary> oblivious(ObliviousGame game, const ComponentOptions& opts,
                                     std::uint64_t seed, std::string name) {
  game.order = resolve_order(opts, game.labels.size(), seed, game.order);
  return std::make_unique<ObliviousAdversary>(std::move(game), std::move(name));
}

void reject_order(const std::string& name, const ComponentOptions& opts) {
  if (opts.order) throw std::invalid_argument("adversary " + name + " chooses its own order");
}

}  // namespace

const std::vector<std::string>& learner_names() {
  static const std::vector<std::string> names = {
      "ew-net", "ew-net-fast", "ew-net-naive", "ew-entropic", "eg",         "eg-abs",
      "ogd",    "ftrl",        "continuous-ew", "minimax-any", "minimax-iso", "constant"};
  return names;
}

const std::vector<std::string>& adversary_names() {
  static const std::vector<std::string> names = {
      "lb-segments", "gd-killer-zeros", "gd-killer-ones", "midpoint", "greedy-iso",
      "optimal-any", "random-iso",      "noisy-iso",      "fixed"};
  return names;
}

bool is_learner_name(const std::string& name) {
  const auto& n = learner_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

bool is_adversary_name(const std::string& name) {
  const auto& n = adversary_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

LossKind default_loss(const std::string& learner) {
  if (learner == "ew-entropic") return LossKind::entropic;
  if (learner == "eg-abs") return LossKind::absolute;
  return LossKind::squared;
}

std::unique_ptr<Learner> make_learner(const std::string& name, std::size_t horizon, LossKind kind,
                                      const ComponentOptions& opts) {
  using enum LossKind;
  if (name == "ew-net" || name == "ew-net-fast" || name == "ew-entropic") {
    if (name == "ew-entropic") require_kind(name, kind, {entropic});
    require_kind(name, kind, {squared, entropic});
    return std::make_unique<EwNetLearner>(
        horizon, kind, EwNetOptions{opts.grid_size, opts.eta, name == "ew-net-fast"});
  }
  if (name == "ew-net-naive") {
    require_kind(name, kind, {squared, entropic});
    return std::make_unique<NaiveEwNetLearner>(horizon, kind, opts.grid_size);
  }
  if (name == "eg" || name == "eg-abs") {
    require_kind(name, kind, name == "eg" ? std::initializer_list<LossKind>{squared}
                                          : std::initializer_list<LossKind>{absolute});
    return std::make_unique<EgLearner>(horizon, kind, opts.eta);
  }
  if (name == "constant") {
    return std::make_unique<ConstantLearner>(horizon, opts.value.value_or(0.5), kind);
  }
  require_kind(name, kind, {squared});
  if (name == "ogd") {
    return std::make_unique<OgdLearner>(initial_function(opts.init, horizon), opts.eta.value_or(0.5));
  }
  if (name == "ftrl") {
    return std::make_unique<FtrlLearner>(initial_function(opts.init, horizon),
                                         opts.lambda.value_or(1.0));
  }
  if (name == "continuous-ew") return std::make_unique<ContinuousEwLearner>(horizon);
  if (name == "minimax-any") return std::make_unique<MinimaxAnyOrderLearner>(horizon);
  if (name == "minimax-iso") return std::make_unique<MinimaxIsotonicLearner>(horizon);
  throw std::invalid_argument("unknown learner '" + name + "'; valid: " + joined(learner_names()));
}

std::unique_ptr<Adversary> make_adversary(const std::string& name, std::size_t horizon,
                                          std::uint64_t seed, const ComponentOptions& opts) {
  if (name == "lb-segments") {
    return oblivious(lower_bound_sequence(horizon, {opts.segments, opts.omega}, seed), opts, seed, name);
  }
  if (name == "gd-killer-zeros") return oblivious(gd_killer(horizon, KillerVariant::zeros), opts, seed, name);
  if (name == "gd-killer-ones") return oblivious(gd_killer(horizon, KillerVariant::ones), opts, seed, name);
  if (name == "random-iso") {
    return oblivious({random_isotonic(horizon, seed), RevealOrder::isotonic(horizon)}, opts, seed, name);
  }
  if (name == "noisy-iso") {
    return oblivious({noisy_isotonic(horizon, opts.sigma.value_or(0.1), seed),
                      RevealOrder::isotonic(horizon)},
                     opts, seed, name);
  }
  if (name == "fixed") {
    if (!opts.labels) throw std::invalid_argument("adversary fixed needs --labels");
    if (opts.labels->size() != horizon) {
      throw std::invalid_argument("adversary fixed: " + std::to_string(opts.labels->size()) +
                                  " labels given for T = " + std::to_string(horizon));
    }
    const bool iso = is_non_decreasing(*opts.labels);
    return oblivious({LabelSequence(*opts.labels, iso), RevealOrder::isotonic(horizon)}, opts, seed, name);
  }
  if (name == "midpoint") {
    reject_order(name, opts);
    return std::make_unique<MidpointSplitter>(horizon);
  }
  if (name == "greedy-iso") {
    reject_order(name, opts);
    return std::make_unique<GreedyIsotonicAdversary>(horizon);
  }
  if (name == "optimal-any") {
    reject_order(name, opts);
    return std::make_unique<OptimalAnyOrderAdversary>(horizon);
  }
  throw std::invalid_argument("unknown adversary '" + name + "'; valid: " + joined(adversary_names()));
}

}  // namespace oir
