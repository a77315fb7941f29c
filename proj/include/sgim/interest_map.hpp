#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "sgim/config.hpp"
#include "sgim/regression.hpp"
#include "sgim/types.hpp"

namespace sgim {

/// gamma = -J(goal, best recorded outcome); -1 when nothing of the goal's
/// kind has been recorded. 0 is perfect.
double competence(const LocalModel& model, const Outcome& goal);

/// Competence progress over an episode of nb_actions executions, squashed
/// with tanh: odd, zero at zero, bounded in (-1, 1), positive iff competence
/// improved. Throws std::domain_error when nb_actions < 1.
double progress(double gamma1, double gamma2, int nb_actions, double alpha_p);

struct LedgerEntry {
  Outcome point;
  double progress = 0.0;
  double competence = 0.0;  // only meaningful for goal entries
  bool is_goal = false;
};

/// Mean of the last `window` progress values divided by kappa; 0 if empty.
double windowed_interest(std::span<const LedgerEntry> ledger, int window, double kappa);

struct SplitCandidate {
  std::size_t dim = 0;
  double threshold = 0.0;
};

/// Draws one split candidate: a dimension with positive width, then a
/// threshold strictly inside the box on it. nullopt for a degenerate box.
std::optional<SplitCandidate> draw_split_candidate(const OutcomeBox& box, Rng& rng);

/// Diagnostic copy of one split decision, kept when recording is enabled.
struct SplitRecord {
  OutcomeBox box;
  std::size_t strategy = 0;
  std::vector<LedgerEntry> ledger;  // the strategy's ledger before the split
  std::vector<SplitCandidate> candidates;
  Rng rng_before;
  SplitCandidate chosen;
  double quality = 0.0;
};

/// Recursive box partition of the outcome space with one progress ledger per
/// (region, strategy) pair.
class InterestMap {
 public:
  struct Node {
    OutcomeBox box;
    int parent = -1;
    int children[2] = {-1, -1};
    std::size_t split_dim = 0;
    double threshold = 0.0;
    std::vector<std::vector<LedgerEntry>> ledgers;  // per strategy
    std::vector<double> interest;                   // per strategy

    bool leaf() const { return children[0] < 0; }
  };

  struct Selection {
    Outcome goal;
    std::size_t strategy = 0;
    int mode = 1;
    std::size_t leaf = 0;
  };

  InterestMap(const Config& cfg, std::vector<StrategyId> strategies);

  const std::vector<StrategyId>& strategies() const { return strategies_; }
  std::size_t strategy_count() const { return strategies_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::size_t root(OutcomeKind k) const { return subspace_of(k); }

  /// Leaves in creation order; optionally only those of one subspace.
  std::vector<std::size_t> leaves() const;
  std::vector<std::size_t> leaves(OutcomeKind k) const;

  /// Leaf containing o (clamped into the root box when outside).
  std::size_t locate(const Outcome& o) const;

  double interest(std::size_t node, std::size_t strategy) const { return nodes_[node].interest[strategy]; }

  /// Appends one entry to the containing leaf's ledger and splits the leaf
  /// when that ledger grows beyond g_max.
  void add(const Outcome& point, std::size_t strategy, double prog, double competence, bool is_goal, Rng& rng);

  /// Ledgers every outcome observed during the episodes, then the goal, all
  /// with the episode's progress.
  void update(const Outcome& goal, double goal_competence, std::span<const Episode> episodes, double prog,
              std::size_t strategy, Rng& rng);

  /// Selection probability of each (leaf, strategy) pair, interest shifted
  /// by the global minimum and normalized; uniform when all are equal.
  /// Index = leaf_position * strategy_count + strategy, leaves as in leaves().
  std::vector<double> pair_probabilities() const;

  Selection select(Rng& rng) const;

  std::size_t clamped_outcomes() const { return clamped_; }
  std::size_t refused_splits() const { return refused_splits_; }

  void record_splits(bool on) { record_splits_ = on; }
  const std::vector<SplitRecord>& split_records() const { return split_records_; }
  void clear_split_records() { split_records_.clear(); }

  nlohmann::json to_json() const;

 private:
  void split(std::size_t node, std::size_t strategy, Rng& rng);
  void refresh_interest(Node& n) const;
  Outcome uniform_in(const OutcomeBox& box, Rng& rng) const;

  Config cfg_;
  std::vector<StrategyId> strategies_;
  std::vector<double> kappa_;
  std::vector<Node> nodes_;
  std::size_t clamped_ = 0;
  std::size_t refused_splits_ = 0;
  bool record_splits_ = false;
  std::vector<SplitRecord> split_records_;
};

}  // namespace sgim
