#include "doctest.h"
#include "oracles.hpp"
#include "sgim/memory.hpp"

using namespace sgim;

namespace {

Episode throw_episode(double x, double h) { return {PolicyParams{}, {Outcome::throw_at(x, h), std::nullopt}}; }

Outcome random_outcome(Rng& rng, double spill) {
  if (uniform01(rng) < 0.3) return Outcome::place_at(uniform(rng, -3.2 - spill, 3.2 + spill));
  return Outcome::throw_at(uniform(rng, -15 - spill, 10 + spill), uniform(rng, -spill, 8 + spill));
}

}  // namespace

TEST_SUITE("memory") {

TEST_CASE("empty memory answers nothing") {
  const EpisodicMemory m(Config::default_space());
  CHECK(m.nearest(Outcome::throw_at(0, 0), 3).empty());
  CHECK(m.count(OutcomeKind::Throw) == 0);
}

TEST_CASE("episodes are indexed per recorded outcome") {
  EpisodicMemory m(Config::default_space());
  m.append(throw_episode(0, 1));
  m.append({PolicyParams{}, {Outcome::throw_at(1, 1), Outcome::place_at(0.5)}});
  CHECK(m.size() == 2);
  CHECK(m.count(OutcomeKind::Throw) == 2);
  CHECK(m.count(OutcomeKind::Place) == 1);
  const auto nn = m.nearest(Outcome::place_at(0.0), 5);
  REQUIRE(nn.size() == 1);
  CHECK(nn[0].episode == 1);
}

TEST_CASE("ties resolve to the earlier episode") {
  EpisodicMemory m(Config::default_space());
  m.append(throw_episode(1, 1));
  m.append(throw_episode(-1, 1));
  m.append(throw_episode(1, 1));
  const auto nn = m.nearest(Outcome::throw_at(0, 1), 3);
  REQUIRE(nn.size() == 3);
  CHECK(nn[0].episode == 0);
  CHECK(nn[1].episode == 1);
  CHECK(nn[2].episode == 2);
}

TEST_CASE("grid index equals a linear scan on random data") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    EpisodicMemory m(Config::default_space());
    const int n = 1 + static_cast<int>(uniform_index(rng, 400));
    for (int i = 0; i < n; ++i) {
      const Outcome a = random_outcome(rng, 2.0);
      Observation obs{a.kind == OutcomeKind::Throw ? a : Outcome::throw_at(0, 1), std::nullopt};
      if (a.kind == OutcomeKind::Place) obs.placed = a;
      // clustered duplicates make ties common
      if (i > 0 && uniform01(rng) < 0.1) obs = m[uniform_index(rng, m.size())].observed;
      m.append({PolicyParams{}, obs});
    }
    for (int q = 0; q < 100; ++q) {
      const Outcome goal = random_outcome(rng, 4.0);
      const std::size_t k = 1 + uniform_index(rng, 12);
      CHECK(m.nearest(goal, k) == oracle::linear_scan(m, goal, k));
      CHECK(nearest_linear(m, goal, k) == oracle::linear_scan(m, goal, k));
    }
  }
}

TEST_CASE("copies are independent snapshots") {
  EpisodicMemory m(Config::default_space());
  m.append(throw_episode(0, 1));
  const EpisodicMemory snap = m;
  m.append(throw_episode(2, 1));
  CHECK(snap.size() == 1);
  CHECK(m.size() == 2);
  CHECK(snap.nearest(Outcome::throw_at(2, 1), 1)[0].episode == 0);
}

}
