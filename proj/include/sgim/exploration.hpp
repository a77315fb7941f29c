#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "sgim/config.hpp"
#include "sgim/regression.hpp"
#include "sgim/types.hpp"

namespace sgim {

struct OptimBudget {
  int actions = 15;
  double rho_rand = 0.2;  // share of the budget spent on uniform random policies

  /// Number of random draws; the first evaluation is always the seed.
  int random_draws() const;
  /// True when evaluation `i` (0-based) is a random draw; draws are spread
  /// evenly over the budget.
  bool is_random_slot(int i) const;
};

/// Objective minimised over policies.
using PolicyObjective = std::function<double(const PolicyParams&)>;

struct Evaluation {
  PolicyParams theta;
  double value = 0.0;
  bool random = false;
};

/// Initial simplex around `start` in [0,1]^n: start plus one vertex per basis
/// direction at distance `step`, the direction reversed when that keeps the
/// vertex inside the unit box. The basis is the coordinate axes or a random
/// orthonormal one.
std::vector<std::vector<double>> initial_simplex(const std::vector<double>& start, double step,
                                                 SimplexOrientation orientation, Rng& rng);

/// Nelder-Mead in range-normalized parameter coordinates seeded at `seed`,
/// interleaved with uniform random policies. Exactly budget.actions
/// evaluations, returned in order.
std::vector<Evaluation> optimise_policy(const PolicyParams& seed, const PolicyObjective& objective,
                                        const OptimBudget& budget, const Config& cfg, Rng& rng);

/// J from goal to the observation's outcome of the same kind, 1.0 if absent.
double goal_error(const Outcome& goal, const Observation& obs, const OutcomeSpace& space);

/// Searches for policies reaching `goal`: seeds from the inverse model (a
/// random policy when the model is cold) and executes every evaluation.
std::vector<Episode> goal_directed_optimisation(const Outcome& goal, const LocalModel& model,
                                                const OptimBudget& budget, const Config& cfg, Rng& rng,
                                                StrategyId strategy = StrategyId::intrinsic(),
                                                std::int64_t first_tick = 0);

/// theta_d plus uniform noise in an L-infinity ball of radius epsilon times
/// each parameter's range, clamped to the bounds.
std::vector<PolicyParams> perturb_policy(const PolicyParams& theta_d, int count, double epsilon,
                                         const ParamBounds& bounds, Rng& rng);

/// Executes `budget` perturbed copies of a demonstrated policy.
std::vector<Episode> mimic_policy(const PolicyParams& theta_d, int budget, double epsilon, const Config& cfg,
                                  Rng& rng, const Outcome& goal, StrategyId strategy,
                                  std::int64_t first_tick = 0);

enum class DemoEncoding { Matching, SignFlipped };

/// Reads a demonstration in the learner's own encoding. SignFlipped
/// misreads the accelerations of segments 6 and 7 as their opposites.
PolicyParams demo_to_params(const PolicyParams& demo, DemoEncoding encoding);

}  // namespace sgim
