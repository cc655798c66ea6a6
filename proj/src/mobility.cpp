#include "dsa/mobility.hpp"

#include <cmath>
#include <stdexcept>

namespace dsa {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool Disc::contains(double x, double y) const {
  const double dx = x - cx;
  const double dy = y - cy;
  return dx * dx + dy * dy <= radius * radius;
}

double normalize_angle(double angle_rad) {
  const double two_pi = 2.0 * kPi;
  double a = angle_rad - two_pi * std::floor((angle_rad + kPi) / two_pi);
  // floor rounding can land exactly on pi
  if (a >= kPi) a -= two_pi;
  return a;
}

ReflectResult reflect_at_boundary(double x_m, double y_m, const Disc& disc, double heading_rad) {
  if (disc.contains(x_m, y_m)) {
    return {x_m, y_m, normalize_angle(heading_rad)};
  }
  const double dx = x_m - disc.cx;
  const double dy = y_m - disc.cy;
  const double dist = std::sqrt(dx * dx + dy * dy);
  return {disc.cx + dx / dist * disc.radius, disc.cy + dy / dist * disc.radius,
          normalize_angle(heading_rad + kPi)};
}

MobilityState step(const MobilityState& state, double dt_s, double max_turn_rad, const Disc& disc,
                   Rng& rng) {
  if (dt_s <= 0.0) throw std::invalid_argument("mobility step requires dt > 0");
  const double turn = rng.uniform(-max_turn_rad, max_turn_rad);
  const double heading = normalize_angle(state.heading_rad + turn);
  const double x = state.x_m + state.speed_mps * dt_s * std::cos(heading);
  const double y = state.y_m + state.speed_mps * dt_s * std::sin(heading);
  const ReflectResult r = reflect_at_boundary(x, y, disc, heading);
  return {r.x_m, r.y_m, r.heading_rad, state.speed_mps};
}

}  // namespace dsa
