#include "mbrl/expmgr/experiment.hpp"

#include <fstream>
#include <json.hpp>

#include "mbrl/dynamics/analytic.hpp"
#include "mbrl/dynamics/trainer.hpp"
#include "mbrl/monitor/csv.hpp"
#include "mbrl/monitor/logger.hpp"

namespace mbrl {
namespace {

std::unique_ptr<Env> make_env(const EnvConfig& cfg) {
  return std::visit(
      [](const auto& e) -> std::unique_ptr<Env> {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, PendulumEnvConfig>)
          return std::make_unique<PendulumEnv>(e.params, e.obs_mode, e.max_episode_steps);
        else if constexpr (std::is_same_v<T, CartPoleEnvConfig>)
          return std::make_unique<CartPoleEnv>(e.params, e.max_episode_steps);
        else
          return std::make_unique<LtiEnv>(e.params);
      },
      cfg);
}

std::unique_ptr<ModelTrainer> make_trainer(const DynamicsConfig& cfg, int state_dim,
                                           int action_dim, RngStream& init_rng) {
  if (cfg.kind == DynamicsConfig::Kind::linear)
    return std::make_unique<LinearModelTrainer>(state_dim, action_dim);
  return std::make_unique<MlpModelTrainer>(state_dim, action_dim, cfg.hidden,
                                           cfg.activation, cfg.epochs, cfg.minibatch,
                                           cfg.lr, init_rng);
}

// Everything the run needs to keep alive while the flow executes.
struct Wiring {
  std::unique_ptr<Env> env;
  std::unique_ptr<DynamicsModel> true_model;
  std::unique_ptr<ModelTrainer> trainer;
  std::unique_ptr<CostFunction> planner_cost;
  std::unique_ptr<Policy> policy;
  std::unique_ptr<ReplayBuffer> buffer;
  std::unique_ptr<ReplayBuffer> sim_buffer;
  std::optional<ExplorationStrategy> exploration;
};

std::optional<ExplorationStrategy> make_exploration(const ExplorationConfig& cfg) {
  switch (cfg.kind) {
    case ExplorationConfig::Kind::none:
      return std::nullopt;
    case ExplorationConfig::Kind::epsilon_greedy:
      return ExplorationStrategy::epsilon_greedy(cfg.epsilon);
    case ExplorationConfig::Kind::gaussian:
      return ExplorationStrategy::gaussian(cfg.sigma);
  }
  return std::nullopt;
}

Wiring build(const ExperimentConfig& cfg, Streams& streams) {
  Wiring w;
  w.env = make_env(cfg.env);
  const EnvSpec& spec = w.env->spec();
  const int obs_dim = spec.obs_space.dim();
  const int act_dim = spec.action_space.dim();

  w.buffer = std::make_unique<ReplayBuffer>(cfg.buffer_capacity);
  w.exploration = make_exploration(cfg.exploration);

  if (cfg.dynamics)
    w.trainer = make_trainer(*cfg.dynamics, obs_dim, act_dim, streams.net_init);

  // planner model: exact dynamics or the (periodically refitted) learned one
  auto planner_model = [&](PlannerModel which) -> const DynamicsModel& {
    if (which == PlannerModel::learned) {
      if (!w.trainer) throw ConfigError("algorithm.model", "no dynamics model configured");
      if (auto* mlp = dynamic_cast<MlpModelTrainer*>(w.trainer.get()))
        return mlp->mlp_model();
      throw ConfigError("algorithm.model",
                        "learned planner model needs dynamics.kind = mlp");
    }
    if (const auto* pend = std::get_if<PendulumEnvConfig>(&cfg.env)) {
      w.true_model = std::make_unique<PendulumDynamicsModel>(pend->params);
    } else if (const auto* lti = std::get_if<LtiEnvConfig>(&cfg.env)) {
      w.true_model = std::make_unique<LinearDynamics>(
          lti->params.A, lti->params.B, Vec::Zero(lti->params.A.rows()));
    } else {
      throw ConfigError("algorithm.model", "no exact dynamics available for this env");
    }
    return *w.true_model;
  };

  // MPC scores with the negated environment reward; iLQR plans through the
  // smooth shaping (local optimizers stall on the wrapped-angle form)
  auto planner_cost = [&](bool smooth) -> const CostFunction& {
    if (const auto* lti = std::get_if<LtiEnvConfig>(&cfg.env)) {
      w.planner_cost = std::make_unique<QuadraticCost>(lti->params.Q, lti->params.R);
    } else if (std::holds_alternative<PendulumEnvConfig>(cfg.env)) {
      if (smooth)
        w.planner_cost = std::make_unique<PendulumSmoothCost>();
      else
        w.planner_cost = std::make_unique<PendulumSwingupCost>();
    } else {
      throw ConfigError("algorithm.kind", "no planner cost for this env");
    }
    return *w.planner_cost;
  };

  if (const auto* dqn = std::get_if<DqnAlgoConfig>(&cfg.algorithm)) {
    auto learner = std::make_unique<DqnLearner>(obs_dim, spec.action_space.n(), dqn->dqn,
                                                streams.net_init);
    w.policy = std::make_unique<DqnPolicy>(std::move(learner), dqn->lr, dqn->learning_starts);
  } else if (const auto* mpc = std::get_if<MpcAlgoConfig>(&cfg.algorithm)) {
    auto planner = std::make_unique<MpcPlanner>(planner_model(mpc->model),
                                                planner_cost(false), spec.action_space,
                                                mpc->horizon, mpc->n_candidates);
    w.policy = std::make_unique<MpcPolicy>(std::move(planner));
  } else {
    const auto& ilqr = std::get<IlqrAlgoConfig>(cfg.algorithm);
    IlqrOptions options = ilqr.options;
    if (options.horizon == 0) options.horizon = spec.max_episode_steps;
    w.policy = std::make_unique<IlqrPolicy>(options, planner_model(ilqr.model),
                                            planner_cost(true), spec.action_space);
  }

  if (cfg.flow.dyna)
    w.sim_buffer = std::make_unique<ReplayBuffer>(cfg.flow.flow.sim_buffer_capacity);
  return w;
}

void write_report(const std::filesystem::path& path, const ExperimentConfig& cfg,
                  std::uint64_t seed, const RunReport& report, const std::string& status,
                  double end_time) {
  nlohmann::ordered_json j;
  j["experiment"] = cfg.experiment.name;
  j["seed"] = seed;
  j["status"] = status;
  j["env"] = cfg.env_kind();
  j["algorithm"] = cfg.algorithm_kind();
  j["flow"] = cfg.flow.dyna ? "dyna" : "train_test";
  j["cycles"] = report.cycles;
  j["totals"]["total_real_samples"] = report.total_real_samples;
  j["totals"]["total_sim_samples"] = report.total_sim_samples;
  j["totals"]["total_train_steps"] = report.total_train_steps;
  j["totals"]["total_test_episodes"] = report.total_test_episodes;
  if (report.last_test_return)
    j["last_test_return"] = *report.last_test_return;
  else
    j["last_test_return"] = nullptr;
  j["end_time"] = end_time;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report " + path.string());
  out << j.dump(2) << "\n";
}

void flush_records(const Recorder& recorder, const std::filesystem::path& records_dir) {
  for (const std::string& key : recorder.keys())
    export_csv(recorder, key, records_dir / (key + ".csv"));
}

LogLevel to_log_level(MonitorSection::Level l) {
  switch (l) {
    case MonitorSection::Level::info: return LogLevel::info;
    case MonitorSection::Level::warning: return LogLevel::warning;
    case MonitorSection::Level::error: return LogLevel::error;
  }
  return LogLevel::info;
}

}  // namespace

std::filesystem::path experiment_run(const ExperimentConfig& config,
                                     const RunOptions& options) {
  ExperimentConfig cfg = config;
  if (options.seed) cfg.experiment.seed = *options.seed;
  std::string out_name = cfg.experiment.out_dir.empty() ? "runs/" + cfg.experiment.name
                                                        : cfg.experiment.out_dir;
  if (options.out_dir) out_name = *options.out_dir;
  cfg.experiment.out_dir = out_name;
  const std::filesystem::path out_dir(out_name);

  if (std::filesystem::exists(out_dir / "report.json") && !options.overwrite)
    throw IoError("out_dir '" + out_dir.string() +
                  "' holds a completed run; pass overwrite to replace it");
  std::filesystem::create_directories(out_dir / "records");

  std::unique_ptr<Clock> clock;
  if (cfg.monitor.wall_time)
    clock = std::make_unique<WallClock>();
  else
    clock = std::make_unique<LogicalClock>();

  Logger logger(to_log_level(cfg.monitor.log_level), cfg.monitor.console,
                out_dir / "log.txt", clock.get());
  Recorder recorder(*clock);
  GlobalStatus status;
  Streams streams = Streams::fork_all(cfg.experiment.seed);

  {
    std::ofstream echo(out_dir / "config.echo");
    if (!echo) throw IoError("cannot write " + (out_dir / "config.echo").string());
    echo << cfg.serialize();
  }

  logger.info("experiment start",
              {{"name", cfg.experiment.name},
               {"seed", std::to_string(cfg.experiment.seed)},
               {"env", cfg.env_kind()},
               {"algorithm", cfg.algorithm_kind()}});

  Wiring w = build(cfg, streams);
  Agent agent(*w.env, *w.policy, *w.buffer, w.exploration, cfg.schedulers, streams);

  RunReport report;
  try {
    if (cfg.flow.dyna)
      report = flow_run(cfg.flow.flow, agent, w.trainer.get(), *w.sim_buffer, status,
                        recorder);
    else
      report = flow_run(cfg.flow.flow.base, agent, status, recorder);
  } catch (const std::exception& e) {
    logger.error(std::string("experiment aborted: ") + e.what(), {}, &status);
    flush_records(recorder, out_dir / "records");
    write_report(out_dir / "report.json", cfg, cfg.experiment.seed, report, "aborted",
                 clock->now());
    throw;
  }

  flush_records(recorder, out_dir / "records");
  write_report(out_dir / "report.json", cfg, cfg.experiment.seed, report, "completed",
               clock->now());
  logger.info("experiment done",
              {{"cycles", std::to_string(report.cycles)},
               {"last_test_return",
                report.last_test_return ? std::to_string(*report.last_test_return) : "none"}},
              &status);
  return out_dir;
}

}  // namespace mbrl
