#include "sgim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace sgim {

using nlohmann::json;

OutcomeSpace Config::default_space() {
  OutcomeSpace s;
  s.boxes[0] = OutcomeBox{OutcomeKind::Throw, {-15.0, 0.0}, {10.0, 8.0}};
  s.boxes[1] = OutcomeBox{OutcomeKind::Place, {-std::numbers::pi, 0.0}, {std::numbers::pi, 0.0}};
  return s;
}

std::vector<std::string> Config::default_algorithms() {
  return {"random",     "sagg_riac",  "mimic_t1",   "mimic_t2", "mimic_t3",
          "emulate_t1", "emulate_t2", "emulate_t3", "sgim_acts"};
}

std::vector<std::string> Config::default_sgim_strategies() {
  return {"intrinsic", "mimic_t1", "emulate_t1", "mimic_t2", "emulate_t2", "mimic_t3", "emulate_t3"};
}

void Config::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
  };
  require(bounds.a_max > 0.0, "a_max must be positive");
  require(bounds.t_min > 0.0 && bounds.t_min < bounds.t_max, "need 0 < t_min < t_max");
  require(arm_length > 0.0 && gravity > 0.0 && v_max > 0.0, "arm_length, gravity, v_max must be positive");
  require(pivot_height >= arm_length, "pivot_height must keep the arm tip above ground");
  for (const auto& box : space.boxes) {
    for (std::size_t d = 0; d < box.dims(); ++d) require(box.lo[d] < box.hi[d], "outcome box lower < upper");
  }
  require(std::abs(p1 + p2 + p3 - 1.0) <= 1e-9, "p1 + p2 + p3 must equal 1");
  require(p1 >= 0.0 && p2 >= 0.0 && p3 >= 0.0, "mode probabilities must be non-negative");
  require(alpha_p > 0.0, "alpha_p must be positive");
  require(g_max >= 1 && delta >= 1 && m_splits >= 1, "g_max, delta, m_splits must be >= 1");
  require(kappa_intrinsic > 0.0 && kappa_social > 0.0, "kappa must be positive");
  require(epsilon >= 0.0, "epsilon must be non-negative");
  require(nba_mimic >= 1 && nba_optimise >= 1, "episode budgets must be >= 1");
  require(rho_rand >= 0.0 && rho_rand <= 1.0, "rho_rand must lie in [0, 1]");
  require(simplex_step > 0.0, "simplex_step must be positive");
  require(knn_k >= 1 && kernel_bandwidth > 0.0, "knn_k >= 1 and kernel_bandwidth > 0");
  require(teacher1_pre_actions >= 1 && teacher1_grid >= 1, "teacher 1 budgets must be >= 1");
  require(total_actions >= 1 && eval_period >= 1, "action budgets must be >= 1");
  require(bench_throw_nx >= 1 && bench_throw_ny >= 1 && bench_place_n >= 1, "benchmark sizes must be >= 1");
  require(seeds >= 1, "seeds must be >= 1");
  require(!algorithms.empty(), "at least one algorithm");
  const auto known = default_algorithms();
  for (const auto& a : algorithms) {
    require(std::find(known.begin(), known.end(), a) != known.end(), "unknown algorithm " + a);
  }
  require(!sgim_strategies.empty(), "at least one SGIM-ACTS strategy");
  std::vector<std::string> seen;
  for (const auto& s : sgim_strategies) {
    parse_strategy(s);
    require(std::find(seen.begin(), seen.end(), s) == seen.end(), "duplicate strategy " + s);
    seen.push_back(s);
  }
}

namespace {

template <class T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

void read_box(const json& j, const char* key, OutcomeBox& box) {
  auto it = j.find(key);
  if (it == j.end()) return;
  const auto lo = it->at("lo").get<std::vector<double>>();
  const auto hi = it->at("hi").get<std::vector<double>>();
  if (lo.size() != box.dims() || hi.size() != box.dims()) {
    throw ConfigError(std::string("box ") + key + " has wrong dimension");
  }
  for (std::size_t d = 0; d < box.dims(); ++d) {
    box.lo[d] = lo[d];
    box.hi[d] = hi[d];
  }
}

json box_json(const OutcomeBox& box) {
  std::vector<double> lo(box.lo.begin(), box.lo.begin() + box.dims());
  std::vector<double> hi(box.hi.begin(), box.hi.begin() + box.dims());
  return {{"lo", lo}, {"hi", hi}};
}

}  // namespace

Config config_from_json(const json& j) {
  Config c;
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    read(j, "a_max", c.bounds.a_max);
    read(j, "t_min", c.bounds.t_min);
    read(j, "t_max", c.bounds.t_max);
    read(j, "arm_length", c.arm_length);
    read(j, "pivot_height", c.pivot_height);
    read(j, "gravity", c.gravity);
    read(j, "v_max", c.v_max);
    read(j, "wall_x", c.wall_x);
    read(j, "full_speed_h", c.full_speed_h);
    read_box(j, "throw_box", c.space.boxes[0]);
    read_box(j, "place_box", c.space.boxes[1]);
    read(j, "alpha_p", c.alpha_p);
    read(j, "g_max", c.g_max);
    read(j, "delta", c.delta);
    read(j, "m_splits", c.m_splits);
    read(j, "p1", c.p1);
    read(j, "p2", c.p2);
    read(j, "p3", c.p3);
    read(j, "mode3_noise", c.mode3_noise);
    read(j, "kappa_intrinsic", c.kappa_intrinsic);
    read(j, "kappa_social", c.kappa_social);
    if (auto it = j.find("progress_reference"); it != j.end()) {
      const auto s = it->get<std::string>();
      if (s == "episode") {
        c.progress_reference = ProgressReference::Episode;
      } else if (s == "memory") {
        c.progress_reference = ProgressReference::Memory;
      } else {
        throw ConfigError("progress_reference must be 'episode' or 'memory'");
      }
    }
    if (auto it = j.find("mode1_subspace"); it != j.end()) {
      const auto s = it->get<std::string>();
      if (s == "leaf_count") {
        c.mode1_subspace = Mode1Subspace::LeafCount;
      } else if (s == "equal") {
        c.mode1_subspace = Mode1Subspace::Equal;
      } else {
        throw ConfigError("mode1_subspace must be 'leaf_count' or 'equal'");
      }
    }
    read(j, "epsilon", c.epsilon);
    read(j, "nba_mimic", c.nba_mimic);
    read(j, "nba_optimise", c.nba_optimise);
    read(j, "rho_rand", c.rho_rand);
    read(j, "simplex_step", c.simplex_step);
    if (auto it = j.find("simplex_orientation"); it != j.end()) {
      const auto s = it->get<std::string>();
      if (s == "axis") {
        c.simplex_orientation = SimplexOrientation::Axis;
      } else if (s == "random") {
        c.simplex_orientation = SimplexOrientation::Random;
      } else {
        throw ConfigError("simplex_orientation must be 'axis' or 'random'");
      }
    }
    if (auto it = j.find("nm_coefficients"); it != j.end()) {
      const auto v = it->get<std::string>();
      if (v != "adaptive" && v != "standard") throw ConfigError("nm_coefficients must be 'adaptive' or 'standard'");
      c.nm_adaptive = v == "adaptive";
    }
    read(j, "knn_k", c.knn_k);
    read(j, "kernel_bandwidth", c.kernel_bandwidth);
    read(j, "teacher1_pre_actions", c.teacher1_pre_actions);
    read(j, "teacher1_grid", c.teacher1_grid);
    read(j, "teacher_seed", c.teacher_seed);
    read(j, "teacher_cache", c.teacher_cache);
    read(j, "total_actions", c.total_actions);
    read(j, "eval_period", c.eval_period);
    read(j, "bench_throw_nx", c.bench_throw_nx);
    read(j, "bench_throw_ny", c.bench_throw_ny);
    read(j, "bench_place_n", c.bench_place_n);
    read(j, "seed", c.seed);
    read(j, "seeds", c.seeds);
    read(j, "algorithms", c.algorithms);
    read(j, "sgim_strategies", c.sgim_strategies);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json config_to_json(const Config& c) {
  json j;
  j["a_max"] = c.bounds.a_max;
  j["t_min"] = c.bounds.t_min;
  j["t_max"] = c.bounds.t_max;
  j["arm_length"] = c.arm_length;
  j["pivot_height"] = c.pivot_height;
  j["gravity"] = c.gravity;
  j["v_max"] = c.v_max;
  j["wall_x"] = c.wall_x;
  j["full_speed_h"] = c.full_speed_h;
  j["throw_box"] = box_json(c.space.boxes[0]);
  j["place_box"] = box_json(c.space.boxes[1]);
  j["alpha_p"] = c.alpha_p;
  j["g_max"] = c.g_max;
  j["delta"] = c.delta;
  j["m_splits"] = c.m_splits;
  j["p1"] = c.p1;
  j["p2"] = c.p2;
  j["p3"] = c.p3;
  j["mode3_noise"] = c.mode3_noise;
  j["kappa_intrinsic"] = c.kappa_intrinsic;
  j["kappa_social"] = c.kappa_social;
  j["progress_reference"] = c.progress_reference == ProgressReference::Episode ? "episode" : "memory";
  j["simplex_orientation"] = c.simplex_orientation == SimplexOrientation::Axis ? "axis" : "random";
  j["mode1_subspace"] = c.mode1_subspace == Mode1Subspace::LeafCount ? "leaf_count" : "equal";
  j["epsilon"] = c.epsilon;
  j["nba_mimic"] = c.nba_mimic;
  j["nba_optimise"] = c.nba_optimise;
  j["rho_rand"] = c.rho_rand;
  j["simplex_step"] = c.simplex_step;
  j["nm_coefficients"] = c.nm_adaptive ? "adaptive" : "standard";
  j["knn_k"] = c.knn_k;
  j["kernel_bandwidth"] = c.kernel_bandwidth;
  j["teacher1_pre_actions"] = c.teacher1_pre_actions;
  j["teacher1_grid"] = c.teacher1_grid;
  j["teacher_seed"] = c.teacher_seed;
  j["teacher_cache"] = c.teacher_cache;
  j["total_actions"] = c.total_actions;
  j["eval_period"] = c.eval_period;
  j["bench_throw_nx"] = c.bench_throw_nx;
  j["bench_throw_ny"] = c.bench_throw_ny;
  j["bench_place_n"] = c.bench_place_n;
  j["seed"] = c.seed;
  j["seeds"] = c.seeds;
  j["algorithms"] = c.algorithms;
  j["sgim_strategies"] = c.sgim_strategies;
  return j;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse " + path + ": " + e.what());
  }
  return config_from_json(j);
}

}  // namespace sgim
