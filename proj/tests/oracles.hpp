#pragma once

// Brute-force references the closed forms are checked against. Deliberately
// naive: fixed-step integration, full scans, exhaustive search.

#include <algorithm>
#include <cmath>
#include <vector>

#include "sgim/config.hpp"
#include "sgim/memory.hpp"
#include "sgim/physics.hpp"

namespace oracle {

struct ArmEuler {
  double phi = 0.0;
  double phi_dot = 0.0;
};

// Explicit Euler on the piecewise-constant acceleration. A final partial step
// absorbs the remainder of every segment. First order: error ~ dt * |phi_dot|.
inline ArmEuler integrate_arm(const sgim::PolicyParams& theta, double dt) {
  ArmEuler s;
  for (std::size_t i = 0; i < sgim::kSegments; ++i) {
    const double a = theta.accel(i);
    double left = theta.duration(i);
    while (left > 0.0) {
      const double h = std::min(dt, left);
      s.phi += s.phi_dot * h;
      s.phi_dot += a * h;
      left -= h;
    }
  }
  return s;
}

struct Flight {
  double x = 0.0;
  double h = 0.0;
  bool wall_hit = false;
};

// Steps the ball under gravity, reflecting vx on the wall, until it crosses
// z = 0; the landing point is interpolated inside the last step.
inline Flight integrate_ball(const sgim::ReleaseState& rs, const sgim::Config& cfg, double dt) {
  double x = rs.pos[0], z = std::max(0.0, rs.pos[1]);
  double vx = rs.vel[0], vz = rs.vel[1];
  Flight f;
  f.h = z;
  for (long step = 0; step < 100000000; ++step) {
    const double nx = x + vx * dt;
    const double nz = z + vz * dt - 0.5 * cfg.gravity * dt * dt;
    const double nvz = vz - cfg.gravity * dt;
    if (vz > 0.0 && nvz <= 0.0) {
      // apex inside this step
      const double ta = vz / cfg.gravity;
      f.h = std::max(f.h, z + vz * ta - 0.5 * cfg.gravity * ta * ta);
    }
    f.h = std::max(f.h, nz);
    if (nz <= 0.0) {
      // solve z + vz t - g t^2 / 2 = 0 inside the step for the landing time
      const double t = (vz + std::sqrt(vz * vz + 2.0 * cfg.gravity * z)) / cfg.gravity;
      f.x = x + vx * t;
      if (vx > 0.0 && f.x > cfg.wall_x) {
        f.x = 2.0 * cfg.wall_x - f.x;
        f.wall_hit = true;
      }
      return f;
    }
    if (vx > 0.0 && nx >= cfg.wall_x) {
      x = 2.0 * cfg.wall_x - nx;
      vx = -vx;
      f.wall_hit = true;
    } else {
      x = nx;
    }
    z = nz;
    vz = nvz;
  }
  return f;
}

inline std::vector<sgim::Neighbor> linear_scan(const sgim::EpisodicMemory& m, const sgim::Outcome& goal,
                                               std::size_t k) {
  std::vector<sgim::Neighbor> all;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const sgim::Outcome* o = m[i].observed.find(goal.kind);
    if (o) all.push_back({i, sgim::distance_j(goal, *o, m.space())});
  }
  std::sort(all.begin(), all.end(), sgim::neighbor_less);
  if (all.size() > k) all.resize(k);
  return all;
}

}  // namespace oracle
