#pragma once

#include "mbrl/dynamics/model.hpp"
#include "mbrl/envs/pendulum.hpp"

namespace mbrl {

// The true pendulum transition function exposed through the model
// interface, for planning against exact dynamics (raw observation mode).
class PendulumDynamicsModel : public DynamicsModel {
 public:
  explicit PendulumDynamicsModel(PendulumParams params = {}) : params_(params) {}

  int state_dim() const override { return 2; }
  int action_dim() const override { return 1; }
  Vec predict(const Vec& state, const Vec& action) const override {
    return pendulum_step_raw(state, action[0], params_);
  }

 private:
  PendulumParams params_;
};

}  // namespace mbrl
