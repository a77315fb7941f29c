#pragma once

#include <utility>

#include "sgim/config.hpp"
#include "sgim/memory.hpp"

namespace sgim {

/// Memory-based inverse model: Gaussian-kernel weighted average of the
/// policies whose outcomes lie nearest to a goal.
class LocalModel {
 public:
  LocalModel(const EpisodicMemory& memory, const Config& cfg)
      : memory_(memory), bounds_(cfg.bounds), k_(static_cast<std::size_t>(cfg.knn_k)), bandwidth_(cfg.kernel_bandwidth) {}

  /// Throws ModelColdError when no outcome of the goal's kind is recorded.
  PolicyParams inverse_lookup(const Outcome& goal) const;

  /// Closest recorded outcome of the goal's kind and its distance J.
  /// Throws ModelColdError when none is recorded.
  std::pair<Outcome, double> best_recorded(const Outcome& goal) const;

  bool cold(OutcomeKind k) const { return memory_.count(k) == 0; }
  const EpisodicMemory& memory() const { return memory_; }

 private:
  const EpisodicMemory& memory_;
  ParamBounds bounds_;
  std::size_t k_;
  double bandwidth_;  // fraction of the subspace diagonal, i.e. in J units
};

}  // namespace sgim
