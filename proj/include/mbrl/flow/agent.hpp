#pragma once

#include <optional>

#include "mbrl/envs/env.hpp"
#include "mbrl/flow/exploration.hpp"
#include "mbrl/flow/policy.hpp"

namespace mbrl {

// Stream ids forked from the experiment seed. The enumeration is stable:
// adding a component appends an id and never perturbs existing streams.
enum class StreamId : std::uint64_t {
  env = 1,
  exploration = 2,
  buffer = 3,
  net_init = 4,
  model = 5,
  planner = 6,
  eval_env = 7,
  sim = 8,
  eval_policy = 9,
};

struct Streams {
  RngStream env, exploration, buffer, net_init, model, planner, eval_env, sim, eval_policy;
  static Streams fork_all(std::uint64_t seed);
};

// Couples environment, policy, exploration, and replay buffer: collects
// training transitions (resetting across episode boundaries) and runs
// greedy evaluation episodes on a separate environment instance so testing
// never disturbs training state.
class Agent {
 public:
  Agent(Env& env, Policy& policy, ReplayBuffer& buffer,
        std::optional<ExplorationStrategy> exploration, const SchedulerSet& schedulers,
        Streams& streams);

  // Exactly n transitions pushed to the buffer and returned; bumps
  // total_real_samples by n.
  Batch collect(int n, GlobalStatus& status);

  // Mean return over n_episodes greedy episodes on the eval environment;
  // bumps total_test_episodes only.
  double evaluate(int n_episodes, GlobalStatus& status);

  Env& env() { return env_; }
  Env& eval_env() { return *eval_env_; }
  Policy& policy() { return policy_; }
  ReplayBuffer& buffer() { return buffer_; }
  const std::optional<ExplorationStrategy>& exploration() const { return exploration_; }
  const SchedulerSet& schedulers() const { return schedulers_; }
  Streams& streams() { return streams_; }

 private:
  Env& env_;
  Policy& policy_;
  ReplayBuffer& buffer_;
  std::optional<ExplorationStrategy> exploration_;
  const SchedulerSet& schedulers_;
  Streams& streams_;
  std::unique_ptr<Env> eval_env_;
  std::optional<Vec> current_obs_;
};

}  // namespace mbrl
