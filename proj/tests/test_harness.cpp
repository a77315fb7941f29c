#include <filesystem>
#include <numbers>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "sgim/harness.hpp"
#include "sgim/kernels.hpp"
#include "sgim/physics.hpp"

using namespace sgim;

namespace {

const TeacherSet& shared_teachers() {
  static const TeacherSet ts = [] {
    Config c;
    c.teacher1_pre_actions = 500;
    return make_teachers(build_teacher1_demoset(c));
  }();
  return ts;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string l;
  while (std::getline(ss, l)) out.push_back(l);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("benchmark is a grid of cell centres per subspace") {
  const Config cfg;
  const Benchmark b = Benchmark::make(cfg);
  CHECK(b.goals.size() == 250);
  CHECK(b.throw_count == 200);
  for (std::size_t i = 0; i < b.goals.size(); ++i) {
    const OutcomeKind k = i < b.throw_count ? OutcomeKind::Throw : OutcomeKind::Place;
    CHECK(b.goals[i].kind == k);
    CHECK(cfg.space.box(k).contains(b.goals[i]));
  }
  CHECK(b.goals[0] == Outcome::throw_at(-15 + 25.0 / 40, 0.4));
  CHECK(b.goals[200].phi() == doctest::Approx(-std::numbers::pi + 2 * std::numbers::pi / 100));
}

TEST_CASE("cold memory scores the error floor") {
  const Config cfg;
  const EvalRecord r = evaluate(EpisodicMemory(cfg.space), Benchmark::make(cfg), cfg);
  CHECK(r.err_all == 1.0);
  CHECK(r.err_throw == 1.0);
  CHECK(r.err_place == 1.0);
}

TEST_CASE("exact achievers for every goal score zero") {
  Config cfg;
  cfg.knn_k = 1;
  Rng rng(91);
  EpisodicMemory m(cfg.space);
  Benchmark b;
  for (int i = 0; i < 60; ++i) {
    const PolicyParams p = cfg.bounds.sample(rng);
    const Observation o = execute_policy(p, cfg);
    m.append({p, o});
    b.goals.insert(b.goals.begin(), o.thrown);
    if (o.placed) b.goals.push_back(*o.placed);
  }
  b.throw_count = 60;
  const PolicyParams rest = cfg.bounds.clamp(PolicyParams{});
  m.append({rest, execute_policy(rest, cfg)});
  b.goals.push_back(*execute_policy(rest, cfg).placed);
  const EvalRecord r = evaluate(m, b, cfg);
  CHECK(r.err_all == 0.0);
}

TEST_CASE("a short random run scores strictly inside (0, 1), reproducibly") {
  const Config cfg;
  Learner a(cfg, Algorithm::Random, nullptr, 92), b(cfg, Algorithm::Random, nullptr, 92);
  a.run_until(500);
  b.run_until(500);
  const Benchmark bench = Benchmark::make(cfg);
  const EvalRecord ra = evaluate(a.memory(), bench, cfg, ExecMode::Serial);
  const EvalRecord rb = evaluate(b.memory(), bench, cfg, ExecMode::Parallel);
  CHECK(ra.err_all > 0.0);
  CHECK(ra.err_all < 1.0);
  CHECK(ra.err_all == rb.err_all);
  CHECK(ra.err_throw == rb.err_throw);
  CHECK(ra.err_place == rb.err_place);
  CHECK(ra.err_all == doctest::Approx(0.5 * (ra.err_throw + ra.err_place)));
  // evaluation leaves the memory untouched
  CHECK(a.memory().size() == 500);
}

TEST_CASE("parallel kernels agree with the serial reference") {
  const Config cfg;
  Rng rng(93);
  std::vector<PolicyParams> thetas(3000);
  for (auto& t : thetas) t = cfg.bounds.sample(rng);
  const auto s = execute_batch(thetas, cfg, ExecMode::Serial);
  const auto p = execute_batch(thetas, cfg, ExecMode::Parallel);
  REQUIRE(s.size() == thetas.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(s[i].thrown == p[i].thrown);
    CHECK(s[i].placed == p[i].placed);
    CHECK(s[i].thrown == execute_policy(thetas[i], cfg).thrown);
  }
  Learner l(cfg, Algorithm::SaggRiac, nullptr, 94);
  l.run_until(800);
  const Benchmark bench = Benchmark::make(cfg);
  const auto es = benchmark_errors(l.memory(), bench.goals, cfg, ExecMode::Serial);
  const auto ep = benchmark_errors(l.memory(), bench.goals, cfg, ExecMode::Parallel);
  CHECK(es == ep);
  for (double e : es) {
    CHECK(e >= 0.0);
    CHECK(e <= 1.0);
  }
}

TEST_CASE("experiment bookkeeping: rows, headers, episode counts") {
  Config cfg;
  cfg.algorithms = {"random", "sgim_acts"};
  cfg.seeds = 2;
  const auto runs = run_experiment(cfg, &shared_teachers());
  REQUIRE(runs.size() == 4);
  CHECK(runs[0].run_id == "random-s1");
  CHECK(runs[1].run_id == "random-s2");
  CHECK(runs[2].run_id == "sgim_acts-s1");

  const auto ev = lines(eval_csv(runs));
  CHECK(ev[0] == "run_id,algorithm,seed,actions,err_all,err_throw,err_place");
  CHECK(ev.size() == 1 + 4 * 8);
  for (const RunResult& r : runs) {
    CHECK(r.actions == 8000);
    CHECK(r.memory_size == 8000u);
    REQUIRE(r.evals.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(r.evals[i].actions == static_cast<std::int64_t>(1000 * (i + 1)));
      CHECK(r.evals[i].err_all >= 0.0);
      CHECK(r.evals[i].err_all <= 1.0);
    }
  }

  const auto st = lines(strategy_csv(runs));
  CHECK(st[0] == "run_id,episode,strategy,teacher,goal_type,region_id,progress");
  const nlohmann::json manifest = manifest_json(cfg, runs);
  std::size_t expected = 0;
  for (const auto& r : manifest["runs"]) {
    if (r["algorithm"] == "sgim_acts") expected += r["episodes"].get<std::size_t>();
  }
  CHECK(st.size() - 1 == expected);
  const std::set<std::string> known{"intrinsic", "mimic_t1", "mimic_t2", "mimic_t3", "emulate_t1", "emulate_t2",
                                    "emulate_t3"};
  for (std::size_t i = 1; i < st.size(); ++i) {
    const std::string strategy = st[i].substr(st[i].find(',', st[i].find(',') + 1) + 1);
    CHECK(known.count(strategy.substr(0, strategy.find(','))) == 1);
    CHECK(st[i].rfind("sgim_acts-s", 0) == 0);
  }
  CHECK(manifest["config"] == config_to_json(cfg));
}

TEST_CASE("evaluation cadence does not change what the learner does") {
  Config cfg;
  cfg.total_actions = 1200;
  const Benchmark bench = Benchmark::make(cfg);
  Config coarse = cfg;
  coarse.eval_period = 1200;
  Config fine = cfg;
  fine.eval_period = 8;  // boundaries fall inside episodes
  const RunResult a = run_single(coarse, Algorithm::SgimActs, 3, &shared_teachers(), bench);
  const RunResult b = run_single(fine, Algorithm::SgimActs, 3, &shared_teachers(), bench);
  REQUIRE(a.episodes.size() == b.episodes.size());
  for (std::size_t i = 0; i < a.episodes.size(); ++i) {
    CHECK(a.episodes[i].first_tick == b.episodes[i].first_tick);
    CHECK(a.episodes[i].nb_actions == b.episodes[i].nb_actions);
  }
  CHECK(a.evals.back().err_all == b.evals.back().err_all);
  CHECK(b.evals.size() == 1200 / 8);
  CHECK(b.evals.front().actions == 8);
}

TEST_CASE("serial and parallel runs, and reruns, write byte-identical CSVs") {
  Config cfg;
  cfg.total_actions = 2000;
  cfg.algorithms = {"sagg_riac", "mimic_t3", "sgim_acts"};
  cfg.seeds = 2;
  const auto a = run_experiment(cfg, &shared_teachers(), {ExecMode::Parallel, false});
  const auto b = run_experiment(cfg, &shared_teachers(), {ExecMode::Serial, false});
  const auto c = run_experiment(cfg, &shared_teachers(), {ExecMode::Parallel, false});
  CHECK(eval_csv(a) == eval_csv(b));
  CHECK(eval_csv(a) == eval_csv(c));
  CHECK(strategy_csv(a) == strategy_csv(b));
  CHECK(strategy_csv(a) == strategy_csv(c));
  CHECK(manifest_json(cfg, a) == manifest_json(cfg, b));
}

TEST_CASE("outputs land on disk and memory snapshots round trip") {
  Config cfg;
  cfg.total_actions = 1000;
  cfg.eval_period = 500;
  cfg.algorithms = {"random", "emulate_t2", "sgim_acts"};
  cfg.seeds = 1;
  const auto runs = run_experiment(cfg, &shared_teachers(), {ExecMode::Parallel, true});
  const auto dir = std::filesystem::temp_directory_path() / "sgim_harness_test";
  std::filesystem::remove_all(dir);
  write_outputs(dir.string(), cfg, runs);
  CHECK(slurp(dir / "eval.csv") == eval_csv(runs));
  CHECK(slurp(dir / "strategy.csv") == strategy_csv(runs));
  CHECK(nlohmann::json::parse(slurp(dir / "manifest.json")) == manifest_json(cfg, runs));
  CHECK_FALSE(std::filesystem::exists(dir / "partition" / "random-s1.json"));
  CHECK(std::filesystem::exists(dir / "partition" / "sgim_acts-s1.json"));

  const EpisodicMemory m = load_memory((dir / "memory" / "sgim_acts-s1.json").string(), cfg.space);
  CHECK(m.size() == 1000);
  const EvalRecord again = evaluate(m, Benchmark::make(cfg), cfg);
  CHECK(again.err_all == runs[2].evals.back().err_all);
  CHECK(memory_to_json(m) == runs[2].memory_snapshot);

  std::ofstream(dir / "blocker") << "x";
  CHECK_THROWS_AS(write_outputs((dir / "blocker" / "out").string(), cfg, runs), std::runtime_error);
  CHECK_THROWS(load_memory((dir / "nope.json").string(), cfg.space));
  std::filesystem::remove_all(dir);
}

TEST_CASE("a learner failure inside the parallel loop is reported with its run id") {
  Config cfg;
  cfg.total_actions = 100;
  cfg.eval_period = 100;
  cfg.algorithms = {"mimic_t1"};
  cfg.seeds = 1;
  try {
    run_experiment(cfg, nullptr);
    FAIL("expected an error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("mimic_t1-s1") != std::string::npos);
  }
}

}
