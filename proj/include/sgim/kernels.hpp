#pragma once

#include <span>
#include <vector>

#include "sgim/config.hpp"
#include "sgim/memory.hpp"
#include "sgim/types.hpp"

namespace sgim {

enum class ExecMode { Serial, Parallel };

/// Executes every policy on the simulator. Output i belongs to input i in
/// both modes.
std::vector<Observation> execute_batch(std::span<const PolicyParams> thetas, const Config& cfg, ExecMode mode);

/// Per-goal benchmark error of a frozen memory: inverse lookup, one
/// execution, J to the same-kind outcome. 1.0 for cold models and for
/// executions that miss the goal's kind.
std::vector<double> benchmark_errors(const EpisodicMemory& memory, std::span<const Outcome> goals, const Config& cfg,
                                     ExecMode mode);

}  // namespace sgim
