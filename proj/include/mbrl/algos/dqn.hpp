#pragma once

#include "mbrl/core/replay_buffer.hpp"
#include "mbrl/fapprox/adam.hpp"
#include "mbrl/fapprox/mlp.hpp"

namespace mbrl {

// argmax over action values, ties broken by the lowest index.
int greedy_action(const Mlp& q_net, const Vec& obs);

// One-step bootstrap targets y_i = r_i + gamma * (1 - done_i) * max_a Q'(s'_i, a).
Vec dqn_targets(const Batch& batch, const Mlp& target_net, double gamma);

struct DqnConfig {
  std::vector<int> hidden{64, 64};
  Activation activation = Activation::relu;
  double gamma = 0.99;
  int minibatch = 64;
  int sync_interval = 500;  // train steps between target-net copies
};

// Q-learner over a discrete action set: Q net maps obs -> one value per
// action, targets come from a periodically synced copy.
class DqnLearner {
 public:
  DqnLearner(int obs_dim, int n_actions, DqnConfig cfg, RngStream& init_rng);

  int n_actions() const { return n_actions_; }
  double gamma() const { return cfg_.gamma; }
  const DqnConfig& config() const { return cfg_; }
  const Mlp& q_net() const { return q_net_; }
  Mlp& q_net() { return q_net_; }
  const Mlp& target_net() const { return target_net_; }
  long long train_steps() const { return train_steps_; }

  int act_greedy(const Vec& obs) const { return greedy_action(q_net_, obs); }

  // Sample a minibatch, one Adam step on the TD-target MSE, sync the target
  // net every sync_interval steps. Returns the minibatch loss.
  double train_step(const BatchSource& source, RngStream& rng, double alpha);

 private:
  int n_actions_;
  DqnConfig cfg_;
  Mlp q_net_, target_net_;
  AdamState opt_;
  long long train_steps_ = 0;
  mutable Mlp::Workspace ws_;
  std::vector<double> grad_, loss_grad_;
};

}  // namespace mbrl
