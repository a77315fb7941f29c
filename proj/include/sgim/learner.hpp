#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgim/config.hpp"
#include "sgim/interest_map.hpp"
#include "sgim/memory.hpp"
#include "sgim/teachers.hpp"

namespace sgim {

enum class Algorithm { Random, SaggRiac, Mimic1, Mimic2, Mimic3, Emulate1, Emulate2, Emulate3, SgimActs };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// Strategies available to an algorithm; empty for Random.
std::vector<StrategyId> strategies_for(Algorithm a);
/// Same, with SGIM-ACTS restricted to cfg.sgim_strategies.
std::vector<StrategyId> strategies_for(Algorithm a, const Config& cfg);
/// True when some configured algorithm asks teachers for demonstrations.
bool needs_teachers(const Config& cfg);

/// Bookkeeping for one episode of a strategic learner.
struct EpisodeRecord {
  std::int64_t episode = 0;
  std::int64_t first_tick = 0;
  StrategyId strategy;
  int mode = 1;
  Outcome selected_goal;  // what the interest map asked for
  Outcome pursued_goal;   // what the episode tried to reach (tau_d for social strategies)
  std::size_t region = 0; // leaf of the selected goal at selection time
  int nb_actions = 0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double progress = 0.0;
};

/// One learner of the comparison. The shared episode loop is: select a
/// (goal, strategy), collect data with that strategy, measure competence
/// progress, update the interest map. Random skips all but data collection.
class Learner {
 public:
  /// `teachers` may be null for algorithms without social strategies.
  Learner(const Config& cfg, Algorithm algorithm, const TeacherSet* teachers, std::uint64_t seed);

  /// Runs one episode using at most max_actions executions; returns the
  /// number executed.
  int step(int max_actions);

  /// Runs episodes until exactly `actions` executions have happened.
  void run_until(std::int64_t actions);

  Algorithm algorithm() const { return algorithm_; }
  std::int64_t actions() const { return actions_; }
  const EpisodicMemory& memory() const { return memory_; }
  const InterestMap* map() const { return map_ ? &*map_ : nullptr; }
  const std::vector<EpisodeRecord>& records() const { return records_; }

 private:
  int step_random(int max_actions);
  int step_strategic(int max_actions);

  Config cfg_;
  Algorithm algorithm_;
  const TeacherSet* teachers_;
  Rng rng_;
  EpisodicMemory memory_;
  std::optional<InterestMap> map_;
  std::vector<EpisodeRecord> records_;
  std::int64_t actions_ = 0;
};

}  // namespace sgim
