#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "sgim/physics.hpp"
#include "sgim/teachers.hpp"

using namespace sgim;

namespace {

PolicyParams min_durations(const ParamBounds& b) {
  PolicyParams p;
  for (std::size_t i = 0; i < kSegments; ++i) p.set_duration(i, b.t_min);
  return p;
}

}  // namespace

TEST_SUITE("physics") {

TEST_CASE("zero accelerations leave the arm at rest") {
  const Config cfg;
  const ArmState s = simulate_arm(min_durations(cfg.bounds), cfg.bounds);
  CHECK(s.phi == 0.0);
  CHECK(s.phi_dot == 0.0);
  CHECK(s.t == doctest::Approx(7 * cfg.bounds.t_min));
}

TEST_CASE("single active segment follows constant-acceleration kinematics") {
  const Config cfg;
  PolicyParams p = min_durations(cfg.bounds);
  const double a = 2.0, t = 0.2;
  p.set_accel(0, a);
  p.set_duration(0, t);
  const ArmState s = simulate_arm(p, cfg.bounds);
  // then six idle segments coasting at a t
  const double coast = 6 * cfg.bounds.t_min;
  CHECK(s.phi_dot == doctest::Approx(a * t));
  CHECK(s.phi == doctest::Approx(0.5 * a * t * t + a * t * coast));
}

TEST_CASE("bang-bang pair ends at a t^2 and at rest") {
  const Config cfg;
  PolicyParams p = min_durations(cfg.bounds);
  const double a = 3.0, t = 0.25;
  p.set_accel(0, a);
  p.set_duration(0, t);
  p.set_accel(1, -a);
  p.set_duration(1, t);
  // segments 2..6 idle at rest
  const ArmState s = simulate_arm(p, cfg.bounds);
  CHECK(s.phi == doctest::Approx(a * t * t).epsilon(1e-12));
  CHECK(std::abs(s.phi_dot) < 1e-12);
}

TEST_CASE("out-of-bounds parameters raise a domain error") {
  const Config cfg;
  PolicyParams p = min_durations(cfg.bounds);
  p.set_accel(3, 5.5);
  CHECK_THROWS_AS(simulate_arm(p, cfg.bounds), ParameterDomainError);
  CHECK_THROWS_AS(execute_policy(p, cfg), ParameterDomainError);
  p.set_accel(3, 0.0);
  p.set_duration(2, 0.01);
  CHECK_THROWS_AS(simulate_arm(p, cfg.bounds), ParameterDomainError);
}

TEST_CASE("release state examples") {
  const Config cfg;
  ReleaseState rs = release_state({0.0, 0.0, 0.0}, cfg);
  CHECK(rs.pos[0] == 1.0);
  CHECK(rs.pos[1] == 1.0);
  CHECK(rs.vel[0] == 0.0);
  CHECK(rs.vel[1] == 0.0);
  rs = release_state({0.0, 2.0, 0.0}, cfg);
  CHECK(rs.vel[0] == doctest::Approx(0.0));
  CHECK(rs.vel[1] == 2.0);
  rs = release_state({std::numbers::pi / 2, 1.0, 0.0}, cfg);
  CHECK(rs.pos[0] == doctest::Approx(0.0));
  CHECK(rs.pos[1] == doctest::Approx(2.0));
  CHECK(rs.vel[0] == doctest::Approx(-1.0));
  CHECK(rs.vel[1] == doctest::Approx(0.0));
}

TEST_CASE("release state lies on the arm circle with tangential velocity") {
  const Config cfg;
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const ArmState s{uniform(rng, -20, 20), uniform(rng, -10, 10), 0.0};
    const ReleaseState rs = release_state(s, cfg);
    const double rx = rs.pos[0], rz = rs.pos[1] - cfg.pivot_height;
    CHECK(std::abs(std::hypot(rx, rz) - cfg.arm_length) < 1e-9);
    const double speed = std::hypot(rs.vel[0], rs.vel[1]);
    CHECK(std::abs(rx * rs.vel[0] + rz * rs.vel[1]) <= 1e-9 * std::max(1.0, speed));
  }
}

TEST_CASE("ball flight examples") {
  const Config cfg;
  FlightResult f = ball_flight({{1.0, 1.0}, {0.0, 0.0}}, cfg);
  CHECK(f.x == 1.0);
  CHECK(f.h == 1.0);
  f = ball_flight({{1.0, 1.0}, {0.0, 3.0}}, cfg);
  CHECK(f.h == doctest::Approx(1.0 + 9.0 / 19.62).epsilon(1e-12));
  f = ball_flight({{1.0, 1.0}, {20.0, 0.0}}, cfg);
  CHECK(f.wall_hit);
  CHECK(f.x < 10.0);
  const oracle::Flight o = oracle::integrate_ball({{1.0, 1.0}, {20.0, 0.0}}, cfg, 1e-5);
  CHECK(o.wall_hit);
  CHECK(std::abs(o.x - f.x) < 1e-3);
}

TEST_CASE("literal apex formula uses the full speed") {
  Config cfg;
  cfg.full_speed_h = true;
  const FlightResult f = ball_flight({{1.0, 1.0}, {4.0, 3.0}}, cfg);
  CHECK(f.h == doctest::Approx(1.0 + 25.0 / (2 * 9.81)));
}

TEST_CASE("closed-form arm matches Euler integration at dt = 1e-6") {
  const Config cfg;
  Rng rng(21);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PolicyParams p = cfg.bounds.sample(rng);
    const ArmState s = simulate_arm(p, cfg.bounds);
    const oracle::ArmEuler e = oracle::integrate_arm(p, 1e-6);
    worst = std::max(worst, std::abs(s.phi - e.phi));
    CHECK(std::abs(s.phi_dot - e.phi_dot) < 1e-6);
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("closed-form flight matches stepped trajectory with wall over random releases") {
  const Config cfg;
  Rng rng(22);
  int walls = 0;
  for (int i = 0; i < 1000; ++i) {
    const ArmState s{uniform(rng, -std::numbers::pi, std::numbers::pi), uniform(rng, -10.5, 10.5), 0.0};
    const ReleaseState rs = release_state(s, cfg);
    const FlightResult f = ball_flight(rs, cfg);
    const oracle::Flight o = oracle::integrate_ball(rs, cfg, 1e-5);
    CHECK(std::abs(f.x - o.x) < 1e-3);
    CHECK(std::abs(f.h - o.h) < 1e-3);
    CHECK(f.wall_hit == o.wall_hit);
    walls += f.wall_hit;
  }
  CHECK(walls > 0);  // the sample exercised the reflection
}

TEST_CASE("landing never passes the wall and apex is at least the release height") {
  const Config cfg;
  Rng rng(23);
  for (int i = 0; i < 5000; ++i) {
    const PolicyParams p = cfg.bounds.sample(rng);
    const ReleaseState rs = release_state(simulate_arm(p, cfg.bounds), cfg);
    const FlightResult f = ball_flight(rs, cfg);
    CHECK(f.x <= cfg.wall_x);
    CHECK(f.h >= rs.pos[1]);
  }
}

TEST_CASE("vertical energy is conserved along a flight without wall contact") {
  const Config cfg;
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    ReleaseState rs{{uniform(rng, -1, 1), uniform(rng, 0, 2)}, {uniform(rng, -5, 0), uniform(rng, -5, 5)}};
    const double e0 = rs.vel[1] * rs.vel[1] + 2 * cfg.gravity * rs.pos[1];
    const FlightResult f = ball_flight(rs, cfg);
    REQUIRE_FALSE(f.wall_hit);
    for (double t = 0.0; t < f.t_impact; t += f.t_impact / 17) {
      const auto pos = ballistic_position(rs, t, cfg.gravity);
      const double vz = rs.vel[1] - cfg.gravity * t;
      CHECK(std::abs(vz * vz + 2 * cfg.gravity * pos[1] - e0) < 1e-9 * std::max(1.0, e0));
    }
  }
}

TEST_CASE("zero policy throws from rest and places at zero") {
  const Config cfg;
  const Observation o = execute_policy(min_durations(cfg.bounds), cfg);
  CHECK(o.thrown.x() == 1.0);
  CHECK(o.thrown.h() == 1.0);
  REQUIRE(o.placed);
  CHECK(o.placed->phi() == 0.0);
}

TEST_CASE("analytic placer lands the place gate") {
  const Config cfg;
  const Observation o = execute_policy(teacher2_place_policy(1.0, cfg), cfg);
  REQUIRE(o.placed);
  CHECK(o.placed->phi() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a fast final arm velocity gives a throw only") {
  const Config cfg;
  PolicyParams p = min_durations(cfg.bounds);
  p.set_accel(0, 4.0);
  p.set_duration(0, 0.25);  // phi_dot = 1
  const ArmState s = simulate_arm(p, cfg.bounds);
  REQUIRE(s.phi_dot == doctest::Approx(1.0));
  CHECK_FALSE(execute_policy(p, cfg).placed);
}

TEST_CASE("execution is deterministic bit for bit") {
  const Config cfg;
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    const PolicyParams p = cfg.bounds.sample(rng);
    const Observation a = execute_policy(p, cfg), b = execute_policy(p, cfg);
    CHECK(a.thrown == b.thrown);
    CHECK(a.placed == b.placed);
  }
}

}
