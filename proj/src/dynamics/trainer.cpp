#include "mbrl/dynamics/trainer.hpp"

#include "mbrl/core/error.hpp"

namespace mbrl {

LinearModelTrainer::LinearModelTrainer(int state_dim, int action_dim)
    : state_dim_(state_dim), action_dim_(action_dim) {}

double LinearModelTrainer::fit(const ReplayBuffer& data, RngStream&) {
  const Batch batch = data.all();
  if (batch.state_dim() != state_dim_ || batch.action_dim() != action_dim_)
    throw ContractError("LinearModelTrainer::fit: dimension mismatch");
  fitted_ = std::make_unique<LinearDynamics>(fit_linear(batch));
  has_fit_ = true;
  // mean squared one-step residual as the fit diagnostic
  double sq = 0.0;
  for (int i = 0; i < batch.size(); ++i) {
    const Vec pred = fitted_->predict(batch.states.row(i).transpose(),
                                      batch.actions.row(i).transpose());
    sq += (pred - Vec(batch.next_states.row(i).transpose())).squaredNorm();
  }
  return sq / batch.size();
}

const DynamicsModel& LinearModelTrainer::model() const {
  if (!fitted_) throw ContractError("LinearModelTrainer::model: fit() has not run");
  return *fitted_;
}

MlpModelTrainer::MlpModelTrainer(int state_dim, int action_dim,
                                 const std::vector<int>& hidden, Activation activation,
                                 int epochs, int minibatch, double alpha,
                                 RngStream& init_rng)
    : model_(state_dim, action_dim, hidden, activation, init_rng),
      opt_(model_.net().param_count()),
      epochs_(epochs),
      minibatch_(minibatch),
      alpha_(alpha) {
  if (epochs < 1) throw ConfigError("dynamics.epochs", "must be >= 1");
  if (minibatch < 1) throw ConfigError("dynamics.minibatch", "must be >= 1");
}

double MlpModelTrainer::fit(const ReplayBuffer& data, RngStream& rng) {
  const Batch batch = data.all();
  model_.fit_normalization(batch);
  double loss = 0.0;
  for (int e = 0; e < epochs_; ++e)
    loss = model_.fit_epoch(batch, minibatch_, rng, opt_, alpha_);
  has_fit_ = true;
  return loss;
}

}  // namespace mbrl
