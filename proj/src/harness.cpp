#include "sgim/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace sgim {

using nlohmann::json;

namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json outcome_json(const Outcome& o) {
  json values = json::array();
  for (std::size_t k = 0; k < o.dims(); ++k) values.push_back(o.v[k]);
  return {{"type", kind_name(o.kind)}, {"values", values}};
}

Outcome outcome_from(const json& j) {
  const auto type = j.at("type").get<std::string>();
  const auto values = j.at("values").get<std::vector<double>>();
  if (type == "throw" && values.size() == 2) return Outcome::throw_at(values[0], values[1]);
  if (type == "place" && values.size() == 1) return Outcome::place_at(values[0]);
  throw ConfigError("bad outcome in memory snapshot");
}

}  // namespace

Benchmark Benchmark::make(const Config& cfg) {
  Benchmark b;
  const OutcomeBox& tb = cfg.space.box(OutcomeKind::Throw);
  const OutcomeBox& pb = cfg.space.box(OutcomeKind::Place);
  const int nx = cfg.bench_throw_nx, ny = cfg.bench_throw_ny, np = cfg.bench_place_n;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      b.goals.push_back(Outcome::throw_at(tb.lo[0] + (i + 0.5) * tb.width(0) / nx,
                                          tb.lo[1] + (j + 0.5) * tb.width(1) / ny));
    }
  }
  b.throw_count = b.goals.size();
  for (int i = 0; i < np; ++i) b.goals.push_back(Outcome::place_at(pb.lo[0] + (i + 0.5) * pb.width(0) / np));
  return b;
}

EvalRecord evaluate(const EpisodicMemory& memory, const Benchmark& bench, const Config& cfg, ExecMode mode) {
  const std::vector<double> errs = benchmark_errors(memory, bench.goals, cfg, mode);
  double st = 0.0, sp = 0.0;
  for (std::size_t i = 0; i < errs.size(); ++i) (i < bench.throw_count ? st : sp) += errs[i];
  const std::size_t nt = bench.throw_count, np = errs.size() - bench.throw_count;
  EvalRecord r;
  r.err_throw = nt ? st / nt : 0.0;
  r.err_place = np ? sp / np : 0.0;
  if (nt && np) {
    r.err_all = 0.5 * (r.err_throw + r.err_place);
  } else {
    r.err_all = nt ? r.err_throw : r.err_place;
  }
  return r;
}

std::string make_run_id(Algorithm a, std::uint64_t seed) { return to_string(a) + "-s" + std::to_string(seed); }

RunResult run_single(const Config& cfg, Algorithm algorithm, std::uint64_t seed, const TeacherSet* teachers,
                     const Benchmark& bench, bool keep_memory, ExecMode eval_mode) {
  RunResult res;
  res.run_id = make_run_id(algorithm, seed);
  res.algorithm = algorithm;
  res.seed = seed;

  Learner learner(cfg, algorithm, teachers, seed);
  const std::int64_t total = cfg.total_actions;
  std::int64_t boundary = cfg.eval_period;
  while (boundary <= total) {
    // Episodes are never cut at an evaluation boundary; the memory holds one
    // episode per action, so the first `boundary` entries are the state of
    // the learner at that action count.
    if (learner.actions() < boundary) {
      learner.step(static_cast<int>(std::min<std::int64_t>(total - learner.actions(), 1 << 30)));
      continue;
    }
    if (learner.memory().size() != static_cast<std::size_t>(learner.actions())) {
      throw std::logic_error(res.run_id + ": memory size differs from action count");
    }
    EpisodicMemory prefix(cfg.space);
    for (std::int64_t i = 0; i < boundary; ++i) prefix.append(learner.memory()[static_cast<std::size_t>(i)]);
    EvalRecord e = evaluate(prefix, bench, cfg, eval_mode);
    e.run_id = res.run_id;
    e.algorithm = to_string(algorithm);
    e.seed = seed;
    e.actions = boundary;
    res.evals.push_back(e);
    boundary += cfg.eval_period;
  }
  learner.run_until(total);

  res.actions = learner.actions();
  res.memory_size = learner.memory().size();
  res.episodes = learner.records();
  if (learner.map()) res.partition = learner.map()->to_json();
  if (keep_memory) res.memory_snapshot = memory_to_json(learner.memory());
  return res;
}

std::vector<RunResult> run_experiment(const Config& cfg, const TeacherSet* teachers, const ExperimentOptions& opts) {
  cfg.validate();
  std::vector<std::pair<Algorithm, std::uint64_t>> jobs;
  for (const std::string& name : cfg.algorithms) {
    const Algorithm a = parse_algorithm(name);
    for (int i = 0; i < cfg.seeds; ++i) jobs.emplace_back(a, cfg.seed + static_cast<std::uint64_t>(i));
  }
  const Benchmark bench = Benchmark::make(cfg);
  std::vector<RunResult> out(jobs.size());
  const long n = static_cast<long>(jobs.size());

  if (opts.mode == ExecMode::Serial) {
    for (long i = 0; i < n; ++i) out[i] = run_single(cfg, jobs[i].first, jobs[i].second, teachers, bench, opts.keep_memory);
    return out;
  }

  std::vector<std::string> errors(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = run_single(cfg, jobs[i].first, jobs[i].second, teachers, bench, opts.keep_memory);
    } catch (const std::exception& e) {
      errors[i] = make_run_id(jobs[i].first, jobs[i].second) + ": " + e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }
  return out;
}

std::string eval_csv(const std::vector<RunResult>& runs) {
  std::string s = "run_id,algorithm,seed,actions,err_all,err_throw,err_place\n";
  for (const RunResult& r : runs) {
    for (const EvalRecord& e : r.evals) {
      s += e.run_id + ',' + e.algorithm + ',' + std::to_string(e.seed) + ',' + std::to_string(e.actions) + ',' +
           fmt_num(e.err_all) + ',' + fmt_num(e.err_throw) + ',' + fmt_num(e.err_place) + '\n';
    }
  }
  return s;
}

std::string strategy_csv(const std::vector<RunResult>& runs) {
  std::string s = "run_id,episode,strategy,teacher,goal_type,region_id,progress\n";
  for (const RunResult& r : runs) {
    if (r.algorithm != Algorithm::SgimActs) continue;
    for (const EpisodeRecord& e : r.episodes) {
      s += r.run_id + ',' + std::to_string(e.episode) + ',' + to_string(e.strategy) + ',' +
           std::to_string(e.strategy.teacher) + ',' + kind_name(e.selected_goal.kind) + ',' +
           std::to_string(e.region) + ',' + fmt_num(e.progress) + '\n';
    }
  }
  return s;
}

json manifest_json(const Config& cfg, const std::vector<RunResult>& runs) {
  json jr = json::array();
  for (const RunResult& r : runs) {
    jr.push_back({{"run_id", r.run_id},
                  {"algorithm", to_string(r.algorithm)},
                  {"seed", r.seed},
                  {"actions", r.actions},
                  {"memory_size", r.memory_size},
                  {"episodes", r.episodes.size()},
                  {"evaluations", r.evals.size()}});
  }
  return {{"config", config_to_json(cfg)}, {"runs", jr}};
}

void write_outputs(const std::string& out_dir, const Config& cfg, const std::vector<RunResult>& runs) {
  namespace fs = std::filesystem;
  const fs::path root(out_dir);
  try {
    fs::create_directories(root / "partition");
  } catch (const fs::filesystem_error& e) {
    throw std::runtime_error("cannot create output directory " + out_dir + ": " + e.what());
  }
  write_text(root / "eval.csv", eval_csv(runs));
  write_text(root / "strategy.csv", strategy_csv(runs));
  write_text(root / "manifest.json", manifest_json(cfg, runs).dump(2) + '\n');
  for (const RunResult& r : runs) {
    if (!r.partition.is_null()) write_text(root / "partition" / (r.run_id + ".json"), r.partition.dump() + '\n');
    if (!r.memory_snapshot.is_null()) {
      fs::create_directories(root / "memory");
      write_text(root / "memory" / (r.run_id + ".json"), r.memory_snapshot.dump() + '\n');
    }
  }
}

json memory_to_json(const EpisodicMemory& memory) {
  json arr = json::array();
  for (const Episode& e : memory.episodes()) {
    json j = {{"theta", e.theta.values()},
              {"throw", {e.observed.thrown.x(), e.observed.thrown.h()}},
              {"place", e.observed.placed ? json(e.observed.placed->phi()) : json(nullptr)},
              {"goal", outcome_json(e.goal)},
              {"strategy", to_string(e.strategy)},
              {"tick", e.tick}};
    arr.push_back(std::move(j));
  }
  return {{"episodes", arr}};
}

EpisodicMemory memory_from_json(const json& j, const OutcomeSpace& space) {
  EpisodicMemory memory(space);
  try {
    for (const json& item : j.at("episodes")) {
      Episode e;
      const auto theta = item.at("theta").get<std::vector<double>>();
      if (theta.size() != kPolicyDim) throw ConfigError("memory snapshot theta must have 14 values");
      for (std::size_t i = 0; i < kPolicyDim; ++i) e.theta[i] = theta[i];
      const auto th = item.at("throw").get<std::vector<double>>();
      if (th.size() != 2) throw ConfigError("memory snapshot throw must have 2 values");
      e.observed.thrown = Outcome::throw_at(th[0], th[1]);
      if (!item.at("place").is_null()) e.observed.placed = Outcome::place_at(item.at("place").get<double>());
      e.goal = outcome_from(item.at("goal"));
      e.strategy = parse_strategy(item.at("strategy").get<std::string>());
      e.tick = item.at("tick").get<std::int64_t>();
      memory.append(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("memory snapshot: ") + e.what());
  }
  return memory;
}

EpisodicMemory load_memory(const std::string& path, const OutcomeSpace& space) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open memory snapshot " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse memory snapshot " + path + ": " + e.what());
  }
  return memory_from_json(j, space);
}

}  // namespace sgim
