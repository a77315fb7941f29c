#include "sgim/exploration.hpp"

#include <algorithm>
#include <cmath>

#include "sgim/nelder_mead.hpp"
#include "sgim/physics.hpp"

namespace sgim {

int OptimBudget::random_draws() const {
  if (actions <= 1) return 0;
  const int n = static_cast<int>(std::ceil(rho_rand * actions - 1e-12));
  return std::clamp(n, 0, actions - 1);
}

bool OptimBudget::is_random_slot(int i) const {
  const int r = random_draws();
  for (int j = 0; j < r; ++j) {
    if (i == (j + 1) * actions / (r + 1)) return true;
  }
  return false;
}

namespace {

double standard_normal(Rng& rng) {
  // Box-Muller on the portable uniform stream
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::vector<std::vector<double>> random_orthonormal_basis(std::size_t n, Rng& rng) {
  std::vector<std::vector<double>> basis;
  while (basis.size() < n) {
    std::vector<double> v(n);
    for (double& x : v) x = standard_normal(rng);
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t d = 0; d < n; ++d) dot += v[d] * b[d];
      for (std::size_t d = 0; d < n; ++d) v[d] -= dot * b[d];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-6) continue;  // nearly dependent draw, try again
    for (double& x : v) x /= norm;
    basis.push_back(std::move(v));
  }
  return basis;
}

bool inside_unit_box(const std::vector<double>& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
}

}  // namespace

std::vector<std::vector<double>> initial_simplex(const std::vector<double>& start, double step,
                                                 SimplexOrientation orientation, Rng& rng) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> basis;
  if (orientation == SimplexOrientation::Random) {
    basis = random_orthonormal_basis(n, rng);
  } else {
    basis.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t d = 0; d < n; ++d) basis[d][d] = 1.0;
  }
  std::vector<std::vector<double>> vertices{start};
  for (const auto& dir : basis) {
    std::vector<double> plus(n), minus(n);
    for (std::size_t d = 0; d < n; ++d) {
      plus[d] = start[d] + step * dir[d];
      minus[d] = start[d] - step * dir[d];
    }
    vertices.push_back(inside_unit_box(plus) || !inside_unit_box(minus) ? plus : minus);
  }
  return vertices;
}

std::vector<Evaluation> optimise_policy(const PolicyParams& seed, const PolicyObjective& objective,
                                        const OptimBudget& budget, const Config& cfg, Rng& rng) {
  const ParamBounds& b = cfg.bounds;
  std::vector<double> start(kPolicyDim);
  for (std::size_t d = 0; d < kPolicyDim; ++d) start[d] = (seed[d] - b.lower(d)) / b.range(d);
  const auto coeffs = cfg.nm_adaptive ? NelderMead::Coefficients::adaptive(kPolicyDim)
                                      : NelderMead::Coefficients::standard();
  NelderMead nm(initial_simplex(start, cfg.simplex_step, cfg.simplex_orientation, rng),
                std::vector<double>(kPolicyDim, 0.0), std::vector<double>(kPolicyDim, 1.0), coeffs);

  std::vector<Evaluation> out;
  out.reserve(static_cast<std::size_t>(std::max(0, budget.actions)));
  for (int i = 0; i < budget.actions; ++i) {
    if (budget.is_random_slot(i)) {
      PolicyParams theta = b.sample(rng);
      out.push_back({theta, objective(theta), true});
      continue;
    }
    PolicyParams theta = seed;
    if (nm.evaluations() > 0) {
      const auto& u = nm.ask();
      for (std::size_t d = 0; d < kPolicyDim; ++d) theta[d] = b.lower(d) + u[d] * b.range(d);
      theta = b.clamp(theta);
    } else {
      theta = b.clamp(seed);
    }
    const double value = objective(theta);
    nm.tell(value);
    out.push_back({theta, value, false});
  }
  return out;
}

double goal_error(const Outcome& goal, const Observation& obs, const OutcomeSpace& space) {
  const Outcome* o = obs.find(goal.kind);
  return o ? distance_j(goal, *o, space) : 1.0;
}

std::vector<Episode> goal_directed_optimisation(const Outcome& goal, const LocalModel& model,
                                                const OptimBudget& budget, const Config& cfg, Rng& rng,
                                                StrategyId strategy, std::int64_t first_tick) {
  PolicyParams seed = model.cold(goal.kind) ? cfg.bounds.sample(rng) : model.inverse_lookup(goal);

  std::vector<Episode> episodes;
  episodes.reserve(static_cast<std::size_t>(std::max(0, budget.actions)));
  auto objective = [&](const PolicyParams& theta) {
    Observation obs = execute_policy(theta, cfg);
    const double err = goal_error(goal, obs, cfg.space);
    episodes.push_back({theta, obs, goal, strategy, first_tick + static_cast<std::int64_t>(episodes.size())});
    return err;
  };
  optimise_policy(seed, objective, budget, cfg, rng);
  return episodes;
}

std::vector<PolicyParams> perturb_policy(const PolicyParams& theta_d, int count, double epsilon,
                                         const ParamBounds& bounds, Rng& rng) {
  std::vector<PolicyParams> out;
  out.reserve(static_cast<std::size_t>(std::max(0, count)));
  for (int n = 0; n < count; ++n) {
    PolicyParams p = theta_d;
    for (std::size_t d = 0; d < kPolicyDim; ++d) {
      const double radius = epsilon * bounds.range(d);
      p[d] += uniform(rng, -radius, radius);
    }
    out.push_back(bounds.clamp(p));
  }
  return out;
}

std::vector<Episode> mimic_policy(const PolicyParams& theta_d, int budget, double epsilon, const Config& cfg,
                                  Rng& rng, const Outcome& goal, StrategyId strategy, std::int64_t first_tick) {
  const PolicyParams demo = cfg.bounds.clamp(theta_d);
  std::vector<Episode> episodes;
  for (const PolicyParams& theta : perturb_policy(demo, budget, epsilon, cfg.bounds, rng)) {
    episodes.push_back({theta, execute_policy(theta, cfg), goal, strategy,
                        first_tick + static_cast<std::int64_t>(episodes.size())});
  }
  return episodes;
}

PolicyParams demo_to_params(const PolicyParams& demo, DemoEncoding encoding) {
  if (encoding == DemoEncoding::Matching) return demo;
  PolicyParams p = demo;
  p.set_accel(5, -demo.accel(5));
  p.set_accel(6, -demo.accel(6));
  return p;
}

}  // namespace sgim
