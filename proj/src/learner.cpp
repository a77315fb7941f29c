#include "sgim/learner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sgim/exploration.hpp"
#include "sgim/physics.hpp"
#include "sgim/regression.hpp"

namespace sgim {

namespace {

constexpr std::pair<Algorithm, const char*> kNames[] = {
    {Algorithm::Random, "random"},         {Algorithm::SaggRiac, "sagg_riac"},
    {Algorithm::Mimic1, "mimic_t1"},       {Algorithm::Mimic2, "mimic_t2"},
    {Algorithm::Mimic3, "mimic_t3"},       {Algorithm::Emulate1, "emulate_t1"},
    {Algorithm::Emulate2, "emulate_t2"},   {Algorithm::Emulate3, "emulate_t3"},
    {Algorithm::SgimActs, "sgim_acts"},
};

}  // namespace

std::string to_string(Algorithm a) {
  for (const auto& [alg, name] : kNames) {
    if (alg == a) return name;
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  for (const auto& [alg, n] : kNames) {
    if (name == n) return alg;
  }
  throw ConfigError("unknown algorithm: " + name);
}

std::vector<StrategyId> strategies_for(Algorithm a) {
  switch (a) {
    case Algorithm::Random:
      return {};
    case Algorithm::SaggRiac:
      return {StrategyId::intrinsic()};
    case Algorithm::Mimic1:
    case Algorithm::Mimic2:
    case Algorithm::Mimic3:
      return {StrategyId::mimic(static_cast<int>(a) - static_cast<int>(Algorithm::Mimic1) + 1)};
    case Algorithm::Emulate1:
    case Algorithm::Emulate2:
    case Algorithm::Emulate3:
      return {StrategyId::emulate(static_cast<int>(a) - static_cast<int>(Algorithm::Emulate1) + 1)};
    case Algorithm::SgimActs:
      return {StrategyId::intrinsic(), StrategyId::mimic(1),   StrategyId::emulate(1), StrategyId::mimic(2),
              StrategyId::emulate(2),  StrategyId::mimic(3),   StrategyId::emulate(3)};
  }
  return {};
}

std::vector<StrategyId> strategies_for(Algorithm a, const Config& cfg) {
  if (a != Algorithm::SgimActs) return strategies_for(a);
  std::vector<StrategyId> out;
  for (const auto& name : cfg.sgim_strategies) out.push_back(parse_strategy(name));
  return out;
}

bool needs_teachers(const Config& cfg) {
  for (const auto& a : cfg.algorithms) {
    for (const auto& s : strategies_for(parse_algorithm(a), cfg)) {
      if (s.social()) return true;
    }
  }
  return false;
}

Learner::Learner(const Config& cfg, Algorithm algorithm, const TeacherSet* teachers, std::uint64_t seed)
    : cfg_(cfg), algorithm_(algorithm), teachers_(teachers), rng_(seed), memory_(cfg.space) {
  auto strategies = strategies_for(algorithm, cfg_);
  if (!strategies.empty()) {
    const bool social = std::any_of(strategies.begin(), strategies.end(), [](const StrategyId& s) { return s.social(); });
    if (social && !teachers_) throw std::invalid_argument(to_string(algorithm) + " needs teachers");
    map_.emplace(cfg_, std::move(strategies));
  }
}

int Learner::step(int max_actions) {
  if (max_actions < 1) throw std::invalid_argument("step: max_actions must be >= 1");
  return map_ ? step_strategic(max_actions) : step_random(max_actions);
}

void Learner::run_until(std::int64_t actions) {
  while (actions_ < actions) step(static_cast<int>(std::min<std::int64_t>(actions - actions_, 1 << 30)));
}

int Learner::step_random(int max_actions) {
  const int n = std::min(cfg_.nba_optimise, max_actions);
  for (int i = 0; i < n; ++i) {
    const PolicyParams theta = cfg_.bounds.sample(rng_);
    memory_.append({theta, execute_policy(theta, cfg_), Outcome{}, StrategyId::intrinsic(), actions_ + i});
  }
  actions_ += n;
  return n;
}

int Learner::step_strategic(int max_actions) {
  InterestMap& map = *map_;
  const InterestMap::Selection sel = map.select(rng_);
  const StrategyId sigma = map.strategies()[sel.strategy];

  EpisodeRecord rec;
  rec.episode = static_cast<std::int64_t>(records_.size());
  rec.first_tick = actions_;
  rec.strategy = sigma;
  rec.mode = sel.mode;
  rec.selected_goal = sel.goal;
  rec.region = sel.leaf;

  const LocalModel model(memory_, cfg_);
  std::vector<Episode> batch;
  Outcome pursued = sel.goal;
  if (sigma.kind == StrategyKind::Intrinsic) {
    rec.gamma1 = competence(model, pursued);
    const OptimBudget budget{std::min(cfg_.nba_optimise, max_actions), cfg_.rho_rand};
    batch = goal_directed_optimisation(pursued, model, budget, cfg_, rng_, sigma, actions_);
  } else {
    const Demonstration demo = (*teachers_)[sigma.teacher].request_demo(sel.goal, cfg_);
    // both social strategies measure progress against the demonstrated outcome
    pursued = demo.outcome;
    rec.gamma1 = competence(model, pursued);
    if (sigma.kind == StrategyKind::Mimic) {
      batch = mimic_policy(demo.theta_observed, std::min(cfg_.nba_mimic, max_actions), cfg_.epsilon, cfg_, rng_,
                           pursued, sigma, actions_);
    } else {
      const OptimBudget budget{std::min(cfg_.nba_optimise, max_actions), cfg_.rho_rand};
      batch = goal_directed_optimisation(pursued, model, budget, cfg_, rng_, sigma, actions_);
    }
  }
  rec.pursued_goal = pursued;

  double best_error = 1.0;
  for (const Episode& e : batch) best_error = std::min(best_error, goal_error(pursued, e.observed, cfg_.space));
  for (const Episode& e : batch) memory_.append(e);

  const int nb = static_cast<int>(batch.size());
  rec.nb_actions = nb;
  if (cfg_.progress_reference == ProgressReference::Episode) {
    rec.gamma2 = -best_error;
  } else {
    rec.gamma2 = competence(LocalModel(memory_, cfg_), pursued);
  }
  rec.progress = progress(rec.gamma1, rec.gamma2, nb, cfg_.alpha_p);
  if (!std::isfinite(rec.gamma1) || !std::isfinite(rec.gamma2) || !std::isfinite(rec.progress)) {
    throw std::runtime_error(to_string(algorithm_) + ": non-finite competence or progress at episode " +
                             std::to_string(rec.episode));
  }

  map.update(pursued, rec.gamma2, batch, rec.progress, sel.strategy, rng_);
  records_.push_back(rec);
  actions_ += nb;
  return nb;
}

}  // namespace sgim
