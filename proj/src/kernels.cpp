#include "sgim/kernels.hpp"

#include "sgim/exploration.hpp"
#include "sgim/physics.hpp"
#include "sgim/regression.hpp"

namespace sgim {

namespace {

double goal_benchmark_error(const LocalModel& model, const Outcome& goal, const Config& cfg) {
  if (model.cold(goal.kind)) return 1.0;
  const PolicyParams theta = model.inverse_lookup(goal);
  return goal_error(goal, execute_policy(theta, cfg), cfg.space);
}

}  // namespace

std::vector<Observation> execute_batch(std::span<const PolicyParams> thetas, const Config& cfg, ExecMode mode) {
  std::vector<Observation> out(thetas.size());
  const long n = static_cast<long>(thetas.size());
  if (mode == ExecMode::Serial) {
    for (long i = 0; i < n; ++i) out[i] = execute_policy(thetas[i], cfg);
  } else {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) out[i] = execute_policy(thetas[i], cfg);
  }
  return out;
}

std::vector<double> benchmark_errors(const EpisodicMemory& memory, std::span<const Outcome> goals, const Config& cfg,
                                     ExecMode mode) {
  const LocalModel model(memory, cfg);
  std::vector<double> out(goals.size());
  const long n = static_cast<long>(goals.size());
  if (mode == ExecMode::Serial) {
    for (long i = 0; i < n; ++i) out[i] = goal_benchmark_error(model, goals[i], cfg);
  } else {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) out[i] = goal_benchmark_error(model, goals[i], cfg);
  }
  return out;
}

}  // namespace sgim
