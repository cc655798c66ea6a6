#include "dsa/rng.hpp"

#include <cmath>

namespace dsa {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(root);
  for (std::uint64_t p : path) {
    h = splitmix64(h ^ splitmix64(p));
  }
  return h;
}

double Rng::uniform01() {
  // 53 mantissa bits, value in [0, 1)
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::uint64_t Rng::below(std::uint64_t n) {
  // Desk-scale n (PRB counts, mix sizes); modulo bias is negligible
  // against 2^64 and keeps the draw count fixed.
  return engine_() % n;
}

double Rng::exponential() {
  // (x + 0.5) * 2^-53 lies strictly inside (0, 1), so the draw is > 0.
  const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  return -std::log(u);
}

double Rng::normal(double mean, double sd) {
  const double u1 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mean + sd * r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace dsa
