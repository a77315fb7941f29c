#include "sgim/physics.hpp"

#include <algorithm>
#include <cmath>

namespace sgim {

ArmState simulate_arm(const PolicyParams& theta, const ParamBounds& bounds) {
  if (!bounds.contains(theta)) throw ParameterDomainError("policy parameters out of bounds");
  ArmState s;
  for (std::size_t i = 0; i < kSegments; ++i) {
    const double a = theta.accel(i);
    const double dt = theta.duration(i);
    s.phi += s.phi_dot * dt + 0.5 * a * dt * dt;
    s.phi_dot += a * dt;
    s.t += dt;
  }
  return s;
}

ReleaseState release_state(const ArmState& final_state, const Config& cfg) {
  const double c = std::cos(final_state.phi);
  const double s = std::sin(final_state.phi);
  const double L = cfg.arm_length;
  ReleaseState rs;
  rs.pos = {L * c, cfg.pivot_height + L * s};
  rs.vel = {-L * final_state.phi_dot * s, L * final_state.phi_dot * c};
  return rs;
}

std::array<double, 2> ballistic_position(const ReleaseState& rs, double t, double gravity) {
  return {rs.pos[0] + rs.vel[0] * t, rs.pos[1] + rs.vel[1] * t - 0.5 * gravity * t * t};
}

FlightResult ball_flight(const ReleaseState& rs, const Config& cfg) {
  const double g = cfg.gravity;
  const double z0 = std::max(0.0, rs.pos[1]);
  const double vx = rs.vel[0];
  const double vz = rs.vel[1];

  FlightResult r;
  // positive root of -g/2 t^2 + vz t + z0 = 0
  r.t_impact = (vz + std::sqrt(vz * vz + 2.0 * g * z0)) / g;

  if (cfg.full_speed_h) {
    r.h = z0 + (vx * vx + vz * vz) / (2.0 * g);
  } else {
    const double up = std::max(0.0, vz);
    r.h = z0 + up * up / (2.0 * g);
  }

  const double x_free = rs.pos[0] + vx * r.t_impact;
  if (vx > 0.0 && x_free > cfg.wall_x) {
    const double t_wall = (cfg.wall_x - rs.pos[0]) / vx;
    r.x = cfg.wall_x - vx * (r.t_impact - t_wall);
    r.wall_hit = true;
  } else {
    r.x = x_free;
  }
  r.x = std::min(r.x, cfg.wall_x);
  return r;
}

Observation execute_policy(const PolicyParams& theta, const Config& cfg) {
  const ArmState arm = simulate_arm(theta, cfg.bounds);
  const FlightResult flight = ball_flight(release_state(arm, cfg), cfg);
  Observation obs{Outcome::throw_at(flight.x, flight.h), std::nullopt};
  if (cfg.arm_length * std::abs(arm.phi_dot) < cfg.v_max) {
    obs.placed = Outcome::place_at(arm.wrapped_phi());
  }
  return obs;
}

}  // namespace sgim
