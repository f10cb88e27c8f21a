#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "mbrl/expmgr/experiment.hpp"

using namespace mbrl;

namespace {

const char* kMinimalConfig = R"(
[experiment]
seed = 1

[env]
kind = cartpole

[algorithm]
kind = dqn

[flow]
type = train_test
max_cycles = 1
)";

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag)
      : path(std::filesystem::temp_directory_path() / ("mbrl_test_" + tag)) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("status: built-ins, updates, unregistered keys") {
  GlobalStatus s;
  CHECK(s.get(GlobalStatus::kTotalRealSamples) == 0.0);
  s.add(GlobalStatus::kTotalRealSamples, 10);
  s.add(GlobalStatus::kTotalRealSamples, 5);
  CHECK(s.get(GlobalStatus::kTotalRealSamples) == 15.0);
  CHECK_THROWS_AS(s.get("no_such_key"), ConfigError);
  CHECK_THROWS_AS(s.add(GlobalStatus::kTotalRealSamples, -1), ContractError);
  s.register_value("custom", 2.5);
  CHECK(s.get("custom") == 2.5);
  s.set("custom", -1.0);
  CHECK(s.get("custom") == -1.0);
  CHECK_THROWS_AS(s.set(GlobalStatus::kCycleIndex, 3), ContractError);
}

TEST_CASE("scheduler arithmetic") {
  GlobalStatus s;
  ParamScheduler lin;
  lin.kind = ParamScheduler::Kind::linear;
  lin.init = 1.0;
  lin.final_value = 0.1;
  lin.span = 100;
  lin.over_key = GlobalStatus::kTotalRealSamples;

  s.add(GlobalStatus::kTotalRealSamples, 50);
  CHECK(lin.value(s) == doctest::Approx(0.55));
  s.add(GlobalStatus::kTotalRealSamples, 950);  // t = 1000, clamped
  CHECK(lin.value(s) == doctest::Approx(0.1));

  ParamScheduler ex;
  ex.kind = ParamScheduler::Kind::exponential;
  ex.init = 1.0;
  ex.rate = 0.5;
  ex.over_key = GlobalStatus::kTotalTrainSteps;
  s.add(GlobalStatus::kTotalTrainSteps, 3);
  CHECK(ex.value(s) == doctest::Approx(0.125));

  ParamScheduler pw;
  pw.kind = ParamScheduler::Kind::piecewise;
  pw.breakpoints = {10, 20};
  pw.values = {1.0, 0.5, 0.25};
  pw.over_key = GlobalStatus::kCycleIndex;
  CHECK(pw.value(s) == 1.0);
  s.add(GlobalStatus::kCycleIndex, 10);
  CHECK(pw.value(s) == 0.5);
  s.add(GlobalStatus::kCycleIndex, 15);
  CHECK(pw.value(s) == 0.25);

  // purity: same status, same value
  CHECK(pw.value(s) == pw.value(s));
}

TEST_CASE("recorder: snapshots, ordering, anomalies") {
  LogicalClock clock;
  Recorder rec(clock);
  GlobalStatus s;
  s.add(GlobalStatus::kTotalTrainSteps, 7);
  rec.append("loss", 0.5, s);
  REQUIRE(rec.size() == 1);
  bool found = false;
  for (const auto& [k, v] : rec.entries()[0].snapshot)
    if (k == GlobalStatus::kTotalTrainSteps) {
      CHECK(v == 7.0);
      found = true;
    }
  CHECK(found);

  for (int i = 0; i < 100; ++i) rec.append("x", i, s);
  const auto xs = rec.entries_for("x");
  REQUIRE(xs.size() == 100);
  for (int i = 0; i < 100; ++i) CHECK(xs[static_cast<std::size_t>(i)]->value == i);

  rec.append("loss", std::nan(""), s);
  const auto losses = rec.entries_for("loss");
  REQUIRE(losses.size() == 2);
  CHECK(losses[1]->anomaly);
  CHECK_FALSE(losses[0]->anomaly);

  // logical clock ticks once per append
  CHECK(rec.entries()[0].time_s == 0.0);
  CHECK(rec.entries()[1].time_s == doctest::Approx(0.001));
}

TEST_CASE("minimal config parses with defaults filled") {
  const ExperimentConfig cfg = ExperimentConfig::parse(kMinimalConfig);
  CHECK(cfg.experiment.seed == 1);
  CHECK(std::string(cfg.env_kind()) == "cartpole");
  CHECK(std::string(cfg.algorithm_kind()) == "dqn");
  const auto& dqn = std::get<DqnAlgoConfig>(cfg.algorithm);
  CHECK(dqn.dqn.gamma == 0.99);
  CHECK(dqn.dqn.hidden == std::vector<int>{64, 64});
  CHECK(cfg.flow.flow.base.stop.kind == StopCondition::Kind::max_cycles);
  CHECK(cfg.key_count() > 10);
}

TEST_CASE("config error kinds carry the offending path") {
  // syntax error with line info
  try {
    ExperimentConfig::parse("[env\nkind = cartpole\n");
    FAIL("expected syntax error");
  } catch (const ConfigSyntaxError& e) {
    CHECK(e.line() == 1);
  }

  // unknown key
  try {
    ExperimentConfig::parse(std::string(kMinimalConfig) + "\n[monitor]\nvolume = 11\n");
    FAIL("expected unknown key error");
  } catch (const ConfigUnknownKeyError& e) {
    CHECK(e.path() == "monitor.volume");
  }

  // unresolved scheduler reference
  try {
    ExperimentConfig::parse(R"(
[experiment]
seed = 1
[env]
kind = cartpole
[algorithm]
kind = dqn
exploration = epsilon_greedy
epsilon = eps
[flow]
max_cycles = 1
)");
    FAIL("expected unresolved ref error");
  } catch (const ConfigUnresolvedRefError& e) {
    CHECK(std::string(e.what()).find("eps") != std::string::npos);
  }

  // incompatible pairing
  try {
    ExperimentConfig::parse(R"(
[experiment]
seed = 1
[env]
kind = pendulum
[algorithm]
kind = dqn
[flow]
max_cycles = 1
)");
    FAIL("expected incompatibility error");
  } catch (const ConfigIncompatibleError& e) {
    CHECK(e.path() == "algorithm.kind");
  }
}

TEST_CASE("config round-trips through serialize") {
  const std::string text = R"(
[experiment]
name = demo
seed = 7

[env]
kind = pendulum
obs = raw

[algorithm]
kind = mpc
horizon = 15
n_candidates = 300

[flow]
type = train_test
samples_per_cycle = 200
max_cycles = 2

[scheduler eps]
kind = linear
init = 1.0
final = 0.05
span = 5000
)";
  const ExperimentConfig cfg = ExperimentConfig::parse(text);
  const std::string normalized = cfg.serialize();
  const ExperimentConfig reparsed = ExperimentConfig::parse(normalized);
  CHECK(reparsed.serialize() == normalized);
}

TEST_CASE("experiment_run writes the result directory and is deterministic") {
  TempDir tmp("exp_run");
  ExperimentConfig cfg = ExperimentConfig::parse(R"(
[experiment]
name = tiny
seed = 3

[env]
kind = cartpole

[algorithm]
kind = dqn
hidden = [16]
minibatch = 8
learning_starts = 1
exploration = epsilon_greedy
epsilon = 0.2

[flow]
type = train_test
samples_per_cycle = 20
train_steps_per_cycle = 2
test_every = 1
n_test_episodes = 2
max_cycles = 3

[monitor]
console = false
)");

  RunOptions opts;
  opts.out_dir = (tmp.path / "a").string();
  const auto dir_a = experiment_run(cfg, opts);
  CHECK(std::filesystem::exists(dir_a / "config.echo"));
  CHECK(std::filesystem::exists(dir_a / "report.json"));
  CHECK(std::filesystem::exists(dir_a / "log.txt"));
  CHECK(std::filesystem::exists(dir_a / "records" / "loss.csv"));
  CHECK(std::filesystem::exists(dir_a / "records" / "test_return.csv"));

  // config echo is re-parseable
  const ExperimentConfig echoed = ExperimentConfig::parse(read_file(dir_a / "config.echo"));
  CHECK(echoed.experiment.seed == 3);

  // rerun into a second directory: byte-identical records
  RunOptions opts_b;
  opts_b.out_dir = (tmp.path / "b").string();
  const auto dir_b = experiment_run(cfg, opts_b);
  CHECK(read_file(dir_a / "records" / "loss.csv") ==
        read_file(dir_b / "records" / "loss.csv"));
  CHECK(read_file(dir_a / "records" / "test_return.csv") ==
        read_file(dir_b / "records" / "test_return.csv"));

  // refuses to overwrite a completed run without the flag
  CHECK_THROWS_AS(experiment_run(cfg, opts), IoError);
  RunOptions force = opts;
  force.overwrite = true;
  CHECK(experiment_run(cfg, force) == dir_a);

  // one-cycle run produces exactly one cycle of records
  ExperimentConfig one = cfg;
  one.flow.flow.base.stop = {StopCondition::Kind::max_cycles, 1};
  RunOptions opts_c;
  opts_c.out_dir = (tmp.path / "c").string();
  const auto dir_c = experiment_run(one, opts_c);
  std::ifstream in(dir_c / "records" / "test_return.csv");
  std::string line;
  int rows = -1;  // header
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 1);
}

TEST_CASE("experiment seed override changes the stream, out_dir override relocates") {
  TempDir tmp("exp_seed");
  ExperimentConfig cfg = ExperimentConfig::parse(kMinimalConfig);
  cfg.monitor.console = false;
  std::get<DqnAlgoConfig>(cfg.algorithm).learning_starts = 1;
  cfg.flow.flow.base.samples_per_cycle = 30;
  cfg.flow.flow.base.stop = {StopCondition::Kind::max_cycles, 2};
  RunOptions a;
  a.out_dir = (tmp.path / "s1").string();
  a.seed = 11;
  RunOptions b;
  b.out_dir = (tmp.path / "s2").string();
  b.seed = 12;
  experiment_run(cfg, a);
  experiment_run(cfg, b);
  CHECK(read_file(tmp.path / "s1" / "records" / "loss.csv") !=
        read_file(tmp.path / "s2" / "records" / "loss.csv"));
}
