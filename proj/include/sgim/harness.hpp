#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgim/config.hpp"
#include "sgim/kernels.hpp"
#include "sgim/learner.hpp"
#include "sgim/memory.hpp"
#include "sgim/teachers.hpp"

namespace sgim {

/// Fixed evaluation goals: cell centres of a grid over the throw box, then
/// cell centres of a 1-D grid over the place box.
struct Benchmark {
  std::vector<Outcome> goals;
  std::size_t throw_count = 0;

  static Benchmark make(const Config& cfg);
};

struct EvalRecord {
  std::string run_id;
  std::string algorithm;
  std::uint64_t seed = 0;
  std::int64_t actions = 0;
  double err_all = 1.0;  // mean of the two subspace means
  double err_throw = 1.0;
  double err_place = 1.0;
};

/// Scores a frozen memory on the benchmark. Nothing executed here is
/// learned from.
EvalRecord evaluate(const EpisodicMemory& memory, const Benchmark& bench, const Config& cfg,
                    ExecMode mode = ExecMode::Serial);

struct RunResult {
  std::string run_id;
  Algorithm algorithm = Algorithm::Random;
  std::uint64_t seed = 0;
  std::vector<EvalRecord> evals;
  std::vector<EpisodeRecord> episodes;  // empty for Random
  nlohmann::json partition;             // null for Random
  std::int64_t actions = 0;
  std::size_t memory_size = 0;
  nlohmann::json memory_snapshot;  // filled only when requested
};

std::string make_run_id(Algorithm a, std::uint64_t seed);

/// One learner from scratch to cfg.total_actions, evaluated exactly at
/// every multiple of cfg.eval_period.
RunResult run_single(const Config& cfg, Algorithm algorithm, std::uint64_t seed, const TeacherSet* teachers,
                     const Benchmark& bench, bool keep_memory = false, ExecMode eval_mode = ExecMode::Serial);

struct ExperimentOptions {
  ExecMode mode = ExecMode::Parallel;  // across runs
  bool keep_memory = false;
};

/// Every (algorithm, seed) pair of the config; seeds are cfg.seed + i.
/// Results come back in (algorithm, seed) order regardless of mode.
std::vector<RunResult> run_experiment(const Config& cfg, const TeacherSet* teachers,
                                      const ExperimentOptions& opts = {});

std::string eval_csv(const std::vector<RunResult>& runs);
std::string strategy_csv(const std::vector<RunResult>& runs);
nlohmann::json manifest_json(const Config& cfg, const std::vector<RunResult>& runs);

/// Writes eval.csv, strategy.csv, manifest.json, partition/<run>.json and,
/// when kept, memory/<run>.json under out_dir.
void write_outputs(const std::string& out_dir, const Config& cfg, const std::vector<RunResult>& runs);

nlohmann::json memory_to_json(const EpisodicMemory& memory);
EpisodicMemory memory_from_json(const nlohmann::json& j, const OutcomeSpace& space);
EpisodicMemory load_memory(const std::string& path, const OutcomeSpace& space);

}  // namespace sgim
