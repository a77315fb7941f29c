#include "sgim/teachers.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "sgim/learner.hpp"

namespace sgim {

using nlohmann::json;

double placer_range(const Config& cfg) { return 3.0 * cfg.bounds.a_max * cfg.bounds.t_max * cfg.bounds.t_max; }

PolicyParams teacher2_place_policy(double phi_target, const Config& cfg) {
  const double range = placer_range(cfg);
  const double phi = std::clamp(phi_target, -range, range);
  const double t = cfg.bounds.t_max;
  const double a = std::clamp(phi / (3.0 * t * t), -cfg.bounds.a_max, cfg.bounds.a_max);
  PolicyParams p;
  for (std::size_t pair = 0; pair < 3; ++pair) {
    p.set_accel(2 * pair, a);
    p.set_duration(2 * pair, t);
    p.set_accel(2 * pair + 1, -a);
    p.set_duration(2 * pair + 1, t);
  }
  p.set_accel(6, 0.0);
  p.set_duration(6, cfg.bounds.t_min);
  return p;
}

DemoSet build_teacher1_demoset(const Config& cfg) {
  Learner learner(cfg, Algorithm::SaggRiac, nullptr, cfg.teacher_seed);
  learner.run_until(cfg.teacher1_pre_actions);
  const EpisodicMemory& memory = learner.memory();

  const OutcomeBox& box = cfg.space.box(OutcomeKind::Throw);
  const int n = cfg.teacher1_grid;
  const double cw = box.width(0) / n;
  const double ch = box.width(1) / n;
  const double max_dist = 0.5 * std::hypot(cw, ch) / box.diagonal();

  DemoSet demos;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Outcome centre = Outcome::throw_at(box.lo[0] + (i + 0.5) * cw, box.lo[1] + (j + 0.5) * ch);
      const auto nn = memory.nearest(centre, 1);
      if (nn.empty() || nn.front().distance > max_dist) continue;
      const Episode& e = memory[nn.front().episode];
      demos.push_back({e.theta, e.observed.thrown});
    }
  }
  return demos;
}

json demoset_to_json(const DemoSet& demos) {
  json arr = json::array();
  for (const DemoEntry& d : demos) {
    json values = json::array();
    for (std::size_t k = 0; k < d.outcome.dims(); ++k) values.push_back(d.outcome.v[k]);
    arr.push_back({{"theta", d.theta.values()}, {"outcome", {{"type", kind_name(d.outcome.kind)}, {"values", values}}}});
  }
  return arr;
}

DemoSet demoset_from_json(const json& j) {
  DemoSet demos;
  try {
    for (const json& item : j) {
      const auto theta = item.at("theta").get<std::vector<double>>();
      if (theta.size() != kPolicyDim) throw ConfigError("demo theta must have 14 values");
      DemoEntry d;
      for (std::size_t i = 0; i < kPolicyDim; ++i) d.theta[i] = theta[i];
      const auto type = item.at("outcome").at("type").get<std::string>();
      const auto values = item.at("outcome").at("values").get<std::vector<double>>();
      if (type == "throw" && values.size() == 2) {
        d.outcome = Outcome::throw_at(values[0], values[1]);
      } else if (type == "place" && values.size() == 1) {
        d.outcome = Outcome::place_at(values[0]);
      } else {
        throw ConfigError("bad demo outcome");
      }
      demos.push_back(d);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("demo set: ") + e.what());
  }
  return demos;
}

void save_demoset(const std::string& path, const DemoSet& demos) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write demo cache " + path);
  out << demoset_to_json(demos).dump(1) << '\n';
  if (!out) throw std::runtime_error("failed writing demo cache " + path);
}

DemoSet load_demoset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open demo cache " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse demo cache " + path + ": " + e.what());
  }
  return demoset_from_json(j);
}

DemoSet load_or_build_teacher1(const Config& cfg, bool rebuild) {
  if (!cfg.teacher_cache.empty() && !rebuild && std::filesystem::exists(cfg.teacher_cache)) {
    return load_demoset(cfg.teacher_cache);
  }
  DemoSet demos = build_teacher1_demoset(cfg);
  if (!cfg.teacher_cache.empty()) save_demoset(cfg.teacher_cache, demos);
  return demos;
}

Teacher Teacher::thrower(DemoSet demos) {
  if (demos.empty()) throw std::invalid_argument("teacher 1 needs at least one demonstration");
  Teacher t;
  t.id_ = 1;
  t.source_ = Source::Dataset;
  t.encoding_ = DemoEncoding::Matching;
  t.demos_ = std::move(demos);
  return t;
}

Teacher Teacher::placer(int id, DemoEncoding observed_as) {
  Teacher t;
  t.id_ = id;
  t.source_ = Source::Placer;
  t.encoding_ = observed_as;
  return t;
}

Demonstration Teacher::request_demo(const Outcome& goal, const Config& cfg) const {
  Demonstration d;
  if (source_ == Source::Dataset) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < demos_.size(); ++i) {
      const double dist = distance_j(goal, demos_[i].outcome, cfg.space);
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    d.theta_true = demos_[best].theta;
    d.outcome = demos_[best].outcome;
  } else {
    // a placer asked for a throw demonstrates placing at rest in front (phi = 0)
    const double target = goal.kind == OutcomeKind::Place ? goal.phi() : 0.0;
    const double range = placer_range(cfg);
    const double phi = std::clamp(target, -range, range);
    d.theta_true = teacher2_place_policy(phi, cfg);
    d.outcome = Outcome::place_at(phi);
  }
  d.theta_observed = demo_to_params(d.theta_true, encoding_);
  return d;
}

TeacherSet make_teachers(DemoSet teacher1_demos) {
  return TeacherSet{{Teacher::thrower(std::move(teacher1_demos)), Teacher::placer(2, DemoEncoding::Matching),
                     Teacher::placer(3, DemoEncoding::SignFlipped)}};
}

}  // namespace sgim
