#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mbrl/algos/dqn.hpp"
#include "mbrl/algos/ilqr.hpp"
#include "mbrl/envs/cartpole.hpp"
#include "mbrl/envs/lti.hpp"
#include "mbrl/envs/pendulum.hpp"
#include "mbrl/expmgr/scheduler.hpp"
#include "mbrl/flow/flows.hpp"

namespace mbrl {

// Declarative experiment definition parsed from the config text format
// (nested [section] headers with key = value pairs; grammar in the README).
// Parsing fills documented defaults, rejects unknown keys, and
// cross-validates every reference and pairing before anything runs.

struct ExperimentSection {
  std::string name = "exp";
  std::uint64_t seed = 0;
  std::string out_dir;  // empty -> "runs/<name>"
};

struct PendulumEnvConfig {
  PendulumParams params;
  PendulumObsMode obs_mode = PendulumObsMode::trig;
  int max_episode_steps = 200;
};

struct CartPoleEnvConfig {
  CartPoleParams params;
  int max_episode_steps = 200;
};

struct LtiEnvConfig {
  LtiParams params;
};

using EnvConfig = std::variant<PendulumEnvConfig, CartPoleEnvConfig, LtiEnvConfig>;

struct ExplorationConfig {
  enum class Kind { none, epsilon_greedy, gaussian };
  Kind kind = Kind::none;
  ValueRef epsilon{0.1};
  ValueRef sigma{0.1};
};

enum class PlannerModel { true_env, learned };

struct DqnAlgoConfig {
  DqnConfig dqn;
  ValueRef lr{1e-3};
  int learning_starts = 1000;
};

struct MpcAlgoConfig {
  int horizon = 20;
  int n_candidates = 1000;
  PlannerModel model = PlannerModel::true_env;
};

struct IlqrAlgoConfig {
  IlqrOptions options;  // options.horizon == 0 -> use env max_episode_steps
  PlannerModel model = PlannerModel::true_env;
};

using AlgoConfig = std::variant<DqnAlgoConfig, MpcAlgoConfig, IlqrAlgoConfig>;

struct DynamicsConfig {
  enum class Kind { linear, mlp };
  Kind kind = Kind::mlp;
  std::vector<int> hidden{64, 64};
  Activation activation = Activation::tanh;
  double lr = 1e-3;
  int epochs = 10;
  int minibatch = 64;
};

struct FlowSection {
  bool dyna = false;
  DynaFlow flow;  // flow.base carries the TrainTestFlow fields
};

struct MonitorSection {
  enum class Level { info, warning, error };
  Level log_level = Level::info;
  bool wall_time = false;  // true trades CSV byte-reproducibility for real timestamps
  bool console = true;
};

struct ExperimentConfig {
  ExperimentSection experiment;
  EnvConfig env = CartPoleEnvConfig{};
  AlgoConfig algorithm = DqnAlgoConfig{};
  ExplorationConfig exploration;
  int buffer_capacity = 50000;  // replay capacity ([algorithm] key)
  std::optional<DynamicsConfig> dynamics;
  FlowSection flow;
  MonitorSection monitor;
  SchedulerSet schedulers;

  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig parse_file(const std::filesystem::path& path);

  // Normalized text form; parse(serialize()) reproduces this config.
  std::string serialize() const;
  // Number of key = value pairs in the normalized form.
  int key_count() const;

  const char* env_kind() const;
  const char* algorithm_kind() const;
};

}  // namespace mbrl
