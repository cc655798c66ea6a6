#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dsa {

/// Stateless 64-bit mixer used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Folds a path of identifiers into a seed so that sub-streams
/// (per episode, per purpose, per sweep point) never collide.
std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path);

/// Deterministic RNG. mt19937_64 output is fully specified by the
/// standard; the distributions below are implemented explicitly so
/// results do not depend on the standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform01();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Unit-mean exponential; strictly positive.
  double exponential();
  /// Gaussian via Box-Muller, always consumes two draws.
  double normal(double mean, double sd);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dsa
