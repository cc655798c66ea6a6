#pragma once

#include "dsa/rng.hpp"

namespace dsa {

/// Coverage disc of the serving RU.
struct Disc {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;

  bool contains(double x, double y) const;
};

struct MobilityState {
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_rad = 0.0;  // kept in [-pi, pi)
  double speed_mps = 0.0;
};

/// Wraps an angle into [-pi, pi).
double normalize_angle(double angle_rad);

/// If (x, y) left the disc, projects it back onto the boundary circle
/// and reverses the heading; otherwise returns the inputs unchanged.
struct ReflectResult {
  double x_m;
  double y_m;
  double heading_rad;
};
ReflectResult reflect_at_boundary(double x_m, double y_m, const Disc& disc, double heading_rad);

/// One correlated-random-walk update: bounded uniform turn, straight
/// advance by speed * dt, then the boundary rule.
MobilityState step(const MobilityState& state, double dt_s, double max_turn_rad, const Disc& disc,
                   Rng& rng);

}  // namespace dsa
