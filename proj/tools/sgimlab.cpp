#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sgim/config.hpp"
#include "sgim/harness.hpp"
#include "sgim/teachers.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("SGIM_OUT_DIR");
  return env && *env ? env : "out";
}

sgim::Config config_or_default(const std::string& path) {
  return path.empty() ? sgim::Config{} : sgim::load_config(path);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strategic active learning on a simulated throwing and placing arm"};
  app.require_subcommand(1);

  std::string config_path;
  int seeds = 0;
  std::string algos;
  std::string out_dir = default_out_dir();
  bool keep_memory = false;
  bool serial = false;
  auto* run = app.add_subcommand("run", "run the algorithm comparison and write CSVs");
  run->add_option("--config", config_path, "JSON config")->required()->check(CLI::ExistingFile);
  run->add_option("--seeds", seeds, "number of seeds per algorithm")->check(CLI::PositiveNumber);
  run->add_option("--algos", algos, "comma separated algorithm names");
  run->add_option("--out", out_dir, "output directory (default $SGIM_OUT_DIR or ./out)");
  run->add_flag("--memory-snapshots", keep_memory, "also write memory/<run>.json");
  run->add_flag("--serial", serial, "run one learner at a time");

  std::string memory_path;
  std::string eval_config;
  auto* eval = app.add_subcommand("eval", "score a memory snapshot on the benchmark");
  eval->add_option("--memory", memory_path, "memory snapshot JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--config", eval_config, "JSON config")->required()->check(CLI::ExistingFile);

  bool rebuild = false;
  std::string cache_config;
  auto* cache = app.add_subcommand("demo-cache", "build the teacher-1 demonstration cache");
  cache->add_flag("--rebuild", rebuild, "rebuild even when the cache exists");
  cache->add_option("--config", cache_config, "JSON config");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      sgim::Config cfg = sgim::load_config(config_path);
      if (seeds > 0) cfg.seeds = seeds;
      if (!algos.empty()) cfg.algorithms = split_list(algos);
      cfg.validate();

      std::optional<sgim::TeacherSet> teachers;
      if (sgim::needs_teachers(cfg)) teachers = sgim::make_teachers(sgim::load_or_build_teacher1(cfg));

      sgim::ExperimentOptions opts;
      opts.mode = serial ? sgim::ExecMode::Serial : sgim::ExecMode::Parallel;
      opts.keep_memory = keep_memory;
      const auto runs = sgim::run_experiment(cfg, teachers ? &*teachers : nullptr, opts);
      sgim::write_outputs(out_dir, cfg, runs);
      std::printf("%zu runs written to %s\n", runs.size(), out_dir.c_str());
    } else if (*eval) {
      const sgim::Config cfg = sgim::load_config(eval_config);
      const sgim::EpisodicMemory memory = sgim::load_memory(memory_path, cfg.space);
      const sgim::EvalRecord r = sgim::evaluate(memory, sgim::Benchmark::make(cfg), cfg, sgim::ExecMode::Parallel);
      std::printf("episodes %zu\nerr_all %.9g\nerr_throw %.9g\nerr_place %.9g\n", memory.size(), r.err_all,
                  r.err_throw, r.err_place);
    } else if (*cache) {
      sgim::Config cfg = config_or_default(cache_config);
      if (cfg.teacher_cache.empty()) cfg.teacher_cache = default_out_dir() + "/teacher1.json";
      const sgim::DemoSet demos = sgim::load_or_build_teacher1(cfg, rebuild);
      std::printf("%zu demonstrations in %s\n", demos.size(), cfg.teacher_cache.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sgimlab: %s\n", e.what());
    return 1;
  }
  return 0;
}
