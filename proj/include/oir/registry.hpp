#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oir/adversary.hpp"
#include "oir/core.hpp"
#include "oir/learner.hpp"

namespace oir {

/// Tunables shared by the named learners and adversaries. Unset fields take
/// each component's default.
struct ComponentOptions {
  std::optional<std::size_t> grid_size;  // ew-*: K
  std::optional<double> eta;             // ew-*, eg*, ogd
  std::optional<double> lambda;          // ftrl
  std::optional<double> value;           // constant
  std::string init = "diagonal";         // ogd/ftrl: diagonal | zero | half
  std::optional<double> sigma;           // noisy-iso
  std::optional<std::size_t> segments;   // lb-segments
  std::optional<std::vector<bool>> omega;
  std::optional<std::vector<double>> labels;  // fixed
  std::optional<std::string> order;           // isotonic | antitonic | random
};

const std::vector<std::string>& learner_names();
const std::vector<std::string>& adversary_names();

bool is_learner_name(const std::string& name);
bool is_adversary_name(const std::string& name);

/// Loss each learner plays by default.
LossKind default_loss(const std::string& learner);

std::unique_ptr<Learner> make_learner(const std::string& name, std::size_t horizon, LossKind kind,
                                      const ComponentOptions& options = {});

std::unique_ptr<Adversary> make_adversary(const std::string& name, std::size_t horizon,
                                          std::uint64_t seed, const ComponentOptions& options = {});

}  // namespace oir
