#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgim/types.hpp"

namespace sgim {

enum class ProgressReference {
  Episode,  // gamma2 from the best outcome produced during the episode
  Memory,   // gamma2 from the whole memory after the episode
};

enum class Mode1Subspace {
  LeafCount,  // subspace drawn with probability proportional to its leaf count
  Equal,      // each subspace equally likely
};

enum class SimplexOrientation {
  Axis,    // one vertex per parameter axis
  Random,  // vertices along a random orthonormal basis, redrawn each episode
};

/// Every tunable of the simulator, learners and experiment protocol.
/// Loaded from a single JSON document; absent keys keep these defaults.
struct Config {
  // policy space
  ParamBounds bounds;

  // arm and ball
  double arm_length = 1.0;
  double pivot_height = 1.0;
  double gravity = 9.81;
  double v_max = 0.01;
  double wall_x = 10.0;
  bool full_speed_h = false;  // apex height from the full release speed instead of its vertical part

  OutcomeSpace space = default_space();

  // interest mapping
  double alpha_p = 1000.0;
  int g_max = 10;
  int delta = 10;
  int m_splits = 50;
  double p1 = 0.05;
  double p2 = 0.7;
  double p3 = 0.25;
  double mode3_noise = 0.05;
  double kappa_intrinsic = 1.0;
  double kappa_social = 2.0;
  ProgressReference progress_reference = ProgressReference::Memory;
  Mode1Subspace mode1_subspace = Mode1Subspace::Equal;

  // policy exploration
  double epsilon = 0.05;
  int nba_mimic = 5;
  int nba_optimise = 15;
  double rho_rand = 0.2;
  double simplex_step = 0.1;
  SimplexOrientation simplex_orientation = SimplexOrientation::Random;
  bool nm_adaptive = true;  // Gao-Han coefficients; false = textbook (1, 2, 0.5, 0.5)

  // local models
  int knn_k = 1;
  double kernel_bandwidth = 0.05;

  // teachers
  int teacher1_pre_actions = 4000;
  int teacher1_grid = 10;
  std::uint64_t teacher_seed = 7;
  std::string teacher_cache;

  // protocol
  int total_actions = 8000;
  int eval_period = 1000;
  int bench_throw_nx = 20;
  int bench_throw_ny = 10;
  int bench_place_n = 50;
  std::uint64_t seed = 1;
  int seeds = 10;
  std::vector<std::string> algorithms = default_algorithms();
  std::vector<std::string> sgim_strategies = default_sgim_strategies();  // strategies SGIM-ACTS may choose from

  double kappa(const StrategyId& s) const { return s.social() ? kappa_social : kappa_intrinsic; }

  /// Throws ConfigError when an invariant is broken.
  void validate() const;

  static OutcomeSpace default_space();
  static std::vector<std::string> default_algorithms();
  static std::vector<std::string> default_sgim_strategies();
};

Config config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const Config& cfg);
Config load_config(const std::string& path);

}  // namespace sgim
