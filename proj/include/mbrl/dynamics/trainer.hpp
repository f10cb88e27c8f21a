#pragma once

#include <memory>

#include "mbrl/core/replay_buffer.hpp"
#include "mbrl/dynamics/linear.hpp"
#include "mbrl/dynamics/mlp_dynamics.hpp"

namespace mbrl {

// Uniform fitting surface over the model classes so control flows can refit
// whichever model the experiment configured. fit() consumes the full buffer
// and returns a loss-like diagnostic (MSE of the fit).
class ModelTrainer {
 public:
  virtual ~ModelTrainer() = default;
  virtual double fit(const ReplayBuffer& data, RngStream& rng) = 0;
  virtual const DynamicsModel& model() const = 0;
  bool has_fit() const { return has_fit_; }

 protected:
  bool has_fit_ = false;
};

class LinearModelTrainer : public ModelTrainer {
 public:
  LinearModelTrainer(int state_dim, int action_dim);
  double fit(const ReplayBuffer& data, RngStream& rng) override;
  const DynamicsModel& model() const override;

 private:
  int state_dim_, action_dim_;
  std::unique_ptr<LinearDynamics> fitted_;
};

class MlpModelTrainer : public ModelTrainer {
 public:
  MlpModelTrainer(int state_dim, int action_dim, const std::vector<int>& hidden,
                  Activation activation, int epochs, int minibatch, double alpha,
                  RngStream& init_rng);
  double fit(const ReplayBuffer& data, RngStream& rng) override;
  const DynamicsModel& model() const override { return model_; }
  MlpDynamics& mlp_model() { return model_; }

 private:
  MlpDynamics model_;
  AdamState opt_;
  int epochs_, minibatch_;
  double alpha_;
};

}  // namespace mbrl
