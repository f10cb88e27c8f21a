#include "mbrl/flow/agent.hpp"

namespace mbrl {

Streams Streams::fork_all(std::uint64_t seed) {
  auto f = [seed](StreamId id) {
    return RngStream::fork(seed, static_cast<std::uint64_t>(id));
  };
  Streams s{f(StreamId::env),     f(StreamId::exploration), f(StreamId::buffer),
            f(StreamId::net_init), f(StreamId::model),       f(StreamId::planner),
            f(StreamId::eval_env), f(StreamId::sim),         f(StreamId::eval_policy)};
  return s;
}

Agent::Agent(Env& env, Policy& policy, ReplayBuffer& buffer,
             std::optional<ExplorationStrategy> exploration, const SchedulerSet& schedulers,
             Streams& streams)
    : env_(env),
      policy_(policy),
      buffer_(buffer),
      exploration_(std::move(exploration)),
      schedulers_(schedulers),
      streams_(streams),
      eval_env_(env.clone()) {}

Batch Agent::collect(int n, GlobalStatus& status) {
  std::vector<Transition> collected;
  collected.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!current_obs_) {
      current_obs_ = env_.reset(streams_.env);
      policy_.episode_begin(*current_obs_);
    }
    const Vec greedy = policy_.act(*current_obs_, streams_.planner);
    const Vec action =
        exploration_
            ? exploration_->apply(greedy, env_.spec().action_space, schedulers_, status,
                                  streams_.exploration)
            : greedy;
    const StepResult sr = env_.step(action);
    Transition t{*current_obs_, action, sr.reward, sr.obs, sr.done};
    buffer_.push(t);
    collected.push_back(std::move(t));
    if (sr.done)
      current_obs_.reset();
    else
      current_obs_ = sr.obs;
  }
  status.add(GlobalStatus::kTotalRealSamples, static_cast<double>(n));
  return Batch::from_transitions(collected);
}

double Agent::evaluate(int n_episodes, GlobalStatus& status) {
  // park any training episode the policy is holding
  const std::shared_ptr<void> saved = policy_.save_episode_state();
  double total_return = 0.0;
  for (int ep = 0; ep < n_episodes; ++ep) {
    Vec obs = eval_env_->reset(streams_.eval_env);
    policy_.episode_begin(obs);
    bool done = false;
    while (!done) {
      const Vec action = policy_.act(obs, streams_.eval_policy);
      const StepResult sr = eval_env_->step(action);
      total_return += sr.reward;
      obs = sr.obs;
      done = sr.done;
    }
  }
  policy_.restore_episode_state(saved);
  status.add(GlobalStatus::kTotalTestEpisodes, static_cast<double>(n_episodes));
  return n_episodes > 0 ? total_return / n_episodes : 0.0;
}

}  // namespace mbrl
