#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbrl/dynamics/trainer.hpp"
#include "mbrl/envs/cartpole.hpp"
#include "mbrl/envs/lti.hpp"
#include "mbrl/flow/flows.hpp"
#include "support/random_instances.hpp"

using namespace mbrl;

namespace {

Vec v1(double a) {
  Vec v(1);
  v[0] = a;
  return v;
}

struct DqnFixture {
  CartPoleEnv env;
  Streams streams;
  SchedulerSet schedulers;
  ReplayBuffer buffer{1000};
  std::unique_ptr<DqnPolicy> policy;
  GlobalStatus status;
  LogicalClock clock;
  Recorder recorder{clock};

  explicit DqnFixture(std::uint64_t seed, int learning_starts = 1)
      : streams(Streams::fork_all(seed)) {
    DqnConfig cfg;
    cfg.hidden = {16};
    cfg.minibatch = 8;
    auto learner = std::make_unique<DqnLearner>(4, 2, cfg, streams.net_init);
    policy = std::make_unique<DqnPolicy>(std::move(learner), ValueRef(1e-3),
                                         learning_starts);
  }

  Agent make_agent(std::optional<ExplorationStrategy> expl = std::nullopt) {
    return Agent(env, *policy, buffer, std::move(expl), schedulers, streams);
  }
};

}  // namespace

TEST_CASE("epsilon-greedy exploration limits") {
  SchedulerSet scheds;
  GlobalStatus status;
  const Space space = Space::discrete(4);
  RngStream rng(1, 2);

  const auto never = ExplorationStrategy::epsilon_greedy(ValueRef(0.0));
  for (int i = 0; i < 100; ++i)
    CHECK(never.apply(v1(2), space, scheds, status, rng)[0] == 2.0);

  const auto always = ExplorationStrategy::epsilon_greedy(ValueRef(1.0));
  int counts[4] = {0, 0, 0, 0};
  const int n = 100000;
  for (int i = 0; i < n; ++i)
    counts[static_cast<int>(always.apply(v1(2), space, scheds, status, rng)[0])]++;
  for (int c : counts) {
    const double f = static_cast<double>(c) / n;
    CHECK(f > 0.24);
    CHECK(f < 0.26);
  }
}

TEST_CASE("gaussian exploration: zero sigma is exact, noise is clamped") {
  SchedulerSet scheds;
  GlobalStatus status;
  const Space space = Space::box(v1(-2), v1(2));
  RngStream rng(3, 2);

  const auto silent = ExplorationStrategy::gaussian(ValueRef(0.0));
  CHECK(silent.apply(v1(1.5), space, scheds, status, rng)[0] == 1.5);

  const auto loud = ExplorationStrategy::gaussian(ValueRef(10.0));
  for (int i = 0; i < 200; ++i) {
    const double a = loud.apply(v1(1.5), space, scheds, status, rng)[0];
    CHECK(a >= -2.0);
    CHECK(a <= 2.0);
  }
}

TEST_CASE("exploration parameters resolve through schedulers; missing ones fail") {
  SchedulerSet scheds;
  ParamScheduler eps;
  eps.kind = ParamScheduler::Kind::linear;
  eps.init = 1.0;
  eps.final_value = 0.0;
  eps.span = 100.0;
  eps.over_key = GlobalStatus::kTotalRealSamples;
  scheds["eps"] = eps;

  GlobalStatus status;
  status.add(GlobalStatus::kTotalRealSamples, 50);
  CHECK(ValueRef::ref("eps").resolve(scheds, status) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ValueRef::ref("missing").resolve(scheds, status),
                  ConfigUnresolvedRefError);
}

TEST_CASE("agent_collect bookkeeping, episode boundaries, determinism") {
  DqnFixture f(100);
  Agent agent = f.make_agent();
  const Batch b = agent.collect(5, f.status);
  CHECK(b.size() == 5);
  CHECK(f.status.get(GlobalStatus::kTotalRealSamples) == 5.0);
  CHECK(f.buffer.size() == 5);

  // run through at least one episode boundary; collection must continue
  int dones = 0;
  const Batch b2 = agent.collect(450, f.status);
  for (int i = 0; i < b2.size(); ++i)
    if (b2.dones[static_cast<std::size_t>(i)]) ++dones;
  CHECK(dones >= 1);
  CHECK(f.status.get(GlobalStatus::kTotalRealSamples) == 455.0);
  CHECK(f.env.total_steps() == 455);

  // same seeds, same batches
  DqnFixture g1(42), g2(42);
  Agent a1 = g1.make_agent(), a2 = g2.make_agent();
  const Batch c1 = a1.collect(64, g1.status);
  const Batch c2 = a2.collect(64, g2.status);
  CHECK(c1.states == c2.states);
  CHECK(c1.actions == c2.actions);
  CHECK(c1.rewards == c2.rewards);
}

TEST_CASE("evaluation is pure: no buffer growth, no train counters") {
  DqnFixture f(7);
  Agent agent = f.make_agent();
  agent.collect(20, f.status);
  const int buf_before = f.buffer.size();
  const double r = agent.evaluate(3, f.status);
  CHECK(r > 0.0);  // cartpole always pays 1 per step
  CHECK(f.buffer.size() == buf_before);
  CHECK(f.status.get(GlobalStatus::kTotalTestEpisodes) == 3.0);
  CHECK(f.status.get(GlobalStatus::kTotalTrainSteps) == 0.0);
  CHECK(f.status.get(GlobalStatus::kTotalRealSamples) == 20.0);
}

TEST_CASE("flow_cycle counters, losses, and test cadence") {
  DqnFixture f(11);
  Agent agent = f.make_agent();
  TrainTestFlow flow;
  flow.samples_per_cycle = 10;
  flow.train_steps_per_cycle = 2;
  flow.test_every = 2;
  flow.n_test_episodes = 3;
  flow.stop = {StopCondition::Kind::max_cycles, 4};

  const CycleReport r1 = flow_cycle(flow, agent, f.status, f.recorder);
  CHECK(f.status.get(GlobalStatus::kTotalRealSamples) == 10.0);
  CHECK(f.status.get(GlobalStatus::kTotalTrainSteps) == 2.0);
  CHECK(r1.losses.size() == 2);
  CHECK_FALSE(r1.test_return.has_value());  // cycle 1, test_every 2

  const CycleReport r2 = flow_cycle(flow, agent, f.status, f.recorder);
  CHECK(r2.test_return.has_value());
  CHECK(f.status.get(GlobalStatus::kTotalTestEpisodes) == 3.0);
  CHECK(f.recorder.entries_for("loss").size() == 4);
  CHECK(f.recorder.entries_for("test_return").size() == 1);
}

TEST_CASE("train steps below learning_starts are no-ops recorded as absent") {
  DqnFixture f(13, 500);
  Agent agent = f.make_agent();
  TrainTestFlow flow;
  flow.samples_per_cycle = 10;
  flow.train_steps_per_cycle = 5;
  flow.test_every = 100;
  flow.stop = {StopCondition::Kind::max_cycles, 1};
  const CycleReport r = flow_cycle(flow, agent, f.status, f.recorder);
  CHECK(r.losses.empty());
  CHECK(f.status.get(GlobalStatus::kTotalTrainSteps) == 0.0);
  CHECK(f.recorder.entries_for("loss").empty());
}

TEST_CASE("flow_run honors both stop conditions, including vacuous entry") {
  {
    DqnFixture f(15);
    Agent agent = f.make_agent();
    TrainTestFlow flow;
    flow.samples_per_cycle = 10;
    flow.train_steps_per_cycle = 1;
    flow.stop = {StopCondition::Kind::max_real_samples, 100};
    const RunReport r = flow_run(flow, agent, f.status, f.recorder);
    CHECK(r.cycles == 10);
    CHECK(r.total_real_samples == 100);
  }
  {
    DqnFixture f(15);
    Agent agent = f.make_agent();
    TrainTestFlow flow;
    flow.samples_per_cycle = 7;
    flow.train_steps_per_cycle = 1;
    flow.stop = {StopCondition::Kind::max_cycles, 3};
    const RunReport r = flow_run(flow, agent, f.status, f.recorder);
    CHECK(r.cycles == 3);
    CHECK(r.total_real_samples == 21);
  }
  {
    DqnFixture f(15);
    Agent agent = f.make_agent();
    f.status.add(GlobalStatus::kCycleIndex, 5);
    TrainTestFlow flow;
    flow.stop = {StopCondition::Kind::max_cycles, 3};
    const RunReport r = flow_run(flow, agent, f.status, f.recorder);
    CHECK(r.total_real_samples == 0);  // zero cycles executed
  }
}

TEST_CASE("dyna cycle bookkeeping: simulated-sample ratio") {
  DqnFixture f(17);
  Agent agent = f.make_agent();
  RngStream init(17, 4);
  MlpModelTrainer trainer(4, 1, {8}, Activation::tanh, 1, 16, 1e-3, init);
  ReplayBuffer sim(1000);
  DynaFlow flow;
  flow.base.samples_per_cycle = 10;
  flow.base.train_steps_per_cycle = 2;
  flow.base.test_every = 100;
  flow.base.stop = {StopCondition::Kind::max_cycles, 1};
  flow.model_fit_every = 1;
  flow.k_sim = 4;

  const CycleReport r = dyna_flow_cycle(flow, agent, &trainer, sim, f.status, f.recorder);
  CHECK(r.sim_generated == 40);
  CHECK(f.status.get(GlobalStatus::kTotalSimSamples) == 40.0);
  CHECK(sim.size() == 40);
  CHECK(r.model_loss.has_value());
  for (int i = 0; i < sim.size(); ++i) CHECK_FALSE(sim.get(i).done);
}

TEST_CASE("dyna with an exact linear model reproduces the real plant") {
  RngStream rng(19, 0);
  LtiParams p;
  p.A = testing::random_matrix(2, 2, rng, 0.5);
  p.B = testing::random_matrix(2, 1, rng);
  p.Q = Mat::Identity(2, 2);
  p.R = Mat::Identity(1, 1);
  p.x0 = Vec::Ones(2);
  p.horizon = 25;
  LtiEnv env(p);

  // exact model of the plant dynamics
  LinearDynamics model(p.A, p.B, Vec::Zero(2));
  RngStream env_rng(19, 1);
  Vec obs = env.reset(env_rng);
  for (int i = 0; i < 50; ++i) {
    const Vec u = testing::random_vector(1, rng);
    const StepResult sr = env.step(u);
    CHECK((model.predict(obs, u) - sr.obs).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(env.reward_from_obs(obs, u) == doctest::Approx(sr.reward).epsilon(1e-12));
    obs = sr.done ? env.reset(env_rng) : sr.obs;
  }
}

TEST_CASE("degeneration: dyna with k_sim=0 and fitting disabled equals train_test") {
  auto run_train_test = [] {
    DqnFixture f(23);
    Agent agent = f.make_agent();
    TrainTestFlow flow;
    flow.samples_per_cycle = 15;
    flow.train_steps_per_cycle = 3;
    flow.test_every = 2;
    flow.n_test_episodes = 2;
    flow.stop = {StopCondition::Kind::max_cycles, 6};
    flow_run(flow, agent, f.status, f.recorder);
    return f.recorder.entries();
  };
  auto run_dyna = [] {
    DqnFixture f(23);
    Agent agent = f.make_agent();
    ReplayBuffer sim(100);
    DynaFlow flow;
    flow.base.samples_per_cycle = 15;
    flow.base.train_steps_per_cycle = 3;
    flow.base.test_every = 2;
    flow.base.n_test_episodes = 2;
    flow.base.stop = {StopCondition::Kind::max_cycles, 6};
    flow.k_sim = 0;
    flow.model_fit_every = 0;  // fitting disabled
    flow_run(flow, agent, nullptr, sim, f.status, f.recorder);
    return f.recorder.entries();
  };
  const auto a = run_train_test();
  const auto b = run_dyna();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].key == b[i].key);
    CHECK(a[i].value == b[i].value);  // bit-identical
    CHECK(a[i].snapshot == b[i].snapshot);
  }
}

TEST_CASE("flow determinism end to end") {
  auto run = [] {
    DqnFixture f(29);
    auto expl = ExplorationStrategy::epsilon_greedy(ValueRef(0.3));
    Agent agent = f.make_agent(expl);
    TrainTestFlow flow;
    flow.samples_per_cycle = 20;
    flow.train_steps_per_cycle = 4;
    flow.test_every = 1;
    flow.n_test_episodes = 2;
    flow.stop = {StopCondition::Kind::max_cycles, 5};
    flow_run(flow, agent, f.status, f.recorder);
    std::vector<double> values;
    for (const auto& e : f.recorder.entries()) values.push_back(e.value);
    return values;
  };
  CHECK(run() == run());
}
