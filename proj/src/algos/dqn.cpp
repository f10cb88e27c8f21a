#include "mbrl/algos/dqn.hpp"

#include <cmath>

#include "mbrl/core/error.hpp"

namespace mbrl {
namespace {

std::vector<int> q_net_sizes(int obs_dim, const std::vector<int>& hidden, int n_actions) {
  std::vector<int> sizes;
  sizes.push_back(obs_dim);
  for (int h : hidden) sizes.push_back(h);
  sizes.push_back(n_actions);
  return sizes;
}

}  // namespace

int greedy_action(const Mlp& q_net, const Vec& obs) {
  const Vec q = q_net.forward(obs);
  int best = 0;
  for (int i = 1; i < q.size(); ++i)
    if (q[i] > q[best]) best = i;
  return best;
}

Vec dqn_targets(const Batch& batch, const Mlp& target_net, double gamma) {
  Vec y(batch.size());
  for (int i = 0; i < batch.size(); ++i) {
    double bootstrap = 0.0;
    if (!batch.dones[static_cast<std::size_t>(i)]) {
      const Vec q = target_net.forward(batch.next_states.row(i).transpose());
      bootstrap = q.maxCoeff();
    }
    y[i] = batch.rewards[i] + gamma * bootstrap;
  }
  return y;
}

DqnLearner::DqnLearner(int obs_dim, int n_actions, DqnConfig cfg, RngStream& init_rng)
    : n_actions_(n_actions),
      cfg_(std::move(cfg)),
      q_net_(q_net_sizes(obs_dim, cfg_.hidden, n_actions), cfg_.activation),
      target_net_(q_net_sizes(obs_dim, cfg_.hidden, n_actions), cfg_.activation),
      opt_(q_net_.param_count()) {
  if (n_actions < 1) throw ContractError("DqnLearner: need at least one action");
  if (!(cfg_.gamma >= 0.0 && cfg_.gamma < 1.0))
    throw ConfigError("algorithm.gamma", "must lie in [0, 1)");
  if (cfg_.minibatch < 1) throw ConfigError("algorithm.minibatch", "must be >= 1");
  if (cfg_.sync_interval < 1) throw ConfigError("algorithm.sync_interval", "must be >= 1");
  q_net_.init_params(init_rng);
  target_net_.params() = q_net_.params();
  ws_ = q_net_.make_workspace();
  grad_.assign(static_cast<std::size_t>(q_net_.param_count()), 0.0);
  loss_grad_.assign(static_cast<std::size_t>(n_actions), 0.0);
}

double DqnLearner::train_step(const BatchSource& source, RngStream& rng, double alpha) {
  const Batch batch = source.sample(cfg_.minibatch, rng);
  const Vec y = dqn_targets(batch, target_net_, cfg_.gamma);
  const int B = batch.size();

  std::fill(grad_.begin(), grad_.end(), 0.0);
  double loss = 0.0;
  for (int i = 0; i < B; ++i) {
    const int a = static_cast<int>(batch.actions(i, 0));
    if (a < 0 || a >= n_actions_)
      throw ContractError("DqnLearner::train_step: action index out of range");
    const auto& q = q_net_.forward(batch.states.row(i).data(), ws_);
    const double err = q[static_cast<std::size_t>(a)] - y[i];
    loss += err * err;
    std::fill(loss_grad_.begin(), loss_grad_.end(), 0.0);
    loss_grad_[static_cast<std::size_t>(a)] = 2.0 * err / B;
    q_net_.backprop(ws_, loss_grad_.data(), grad_.data());
  }
  loss /= B;

  adam_step(q_net_.params(), grad_, opt_, alpha);
  ++train_steps_;
  if (train_steps_ % cfg_.sync_interval == 0) target_net_.params() = q_net_.params();
  return loss;
}

}  // namespace mbrl
