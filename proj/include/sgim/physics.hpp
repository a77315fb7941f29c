#pragma once

#include <array>

#include "sgim/config.hpp"
#include "sgim/types.hpp"

namespace sgim {

/// Final state of the 1-DOF arm after a motor primitive.
struct ArmState {
  double phi = 0.0;      // raw angle, rad (not wrapped)
  double phi_dot = 0.0;  // rad/s
  double t = 0.0;        // elapsed time, s

  double wrapped_phi() const { return wrap_angle(phi); }
};

/// Ball state at the release instant: arm-tip position and tangential velocity.
struct ReleaseState {
  std::array<double, 2> pos{0.0, 0.0};  // (x, z)
  std::array<double, 2> vel{0.0, 0.0};  // (vx, vz)
};

struct FlightResult {
  double x = 0.0;
  double h = 0.0;
  double t_impact = 0.0;
  bool wall_hit = false;
};

/// Exact integration of the piecewise-constant acceleration profile.
/// Throws ParameterDomainError when theta is out of bounds.
ArmState simulate_arm(const PolicyParams& theta, const ParamBounds& bounds);

ReleaseState release_state(const ArmState& final_state, const Config& cfg);

/// Ballistic flight to the ground with at most one elastic bounce on the wall.
FlightResult ball_flight(const ReleaseState& rs, const Config& cfg);

/// Free-flight position (no wall) at time t after release.
std::array<double, 2> ballistic_position(const ReleaseState& rs, double t, double gravity);

/// Runs the arm and the ball; the placement is reported only when the tip
/// speed at the end of the motion is below v_max.
Observation execute_policy(const PolicyParams& theta, const Config& cfg);

}  // namespace sgim
