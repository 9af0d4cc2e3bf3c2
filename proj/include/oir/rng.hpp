#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace oir {

/// SplitMix64 finaliser; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for the stream identified by (master seed, component id).
std::uint64_t derive_seed(std::uint64_t master, std::string_view component);

/// Reproducible generator: std::mt19937_64 seeded through derive_seed, with
/// the variate transforms written out here (the standard distributions are
/// not bit-identical across library implementations).
class Rng {
 public:
  Rng(std::uint64_t master, std::string_view component);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound), by rejection.
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p);
  /// Standard normal via Box-Muller.
  double normal();

  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace oir
