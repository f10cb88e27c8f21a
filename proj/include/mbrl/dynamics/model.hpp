#pragma once

#include <vector>

#include "mbrl/core/types.hpp"

namespace mbrl {

// One-step dynamics model: next state as a deterministic function of
// (state, action). Prediction is const and safe to call from many threads;
// fitting (where supported) happens under a single writer.
class DynamicsModel {
 public:
  virtual ~DynamicsModel() = default;

  virtual int state_dim() const = 0;
  virtual int action_dim() const = 0;
  virtual Vec predict(const Vec& state, const Vec& action) const = 0;

  // Analytic Jacobians d(next)/d(state), d(next)/d(action) when available;
  // returns false if the caller should fall back to finite differences.
  virtual bool jacobians(const Vec& /*state*/, const Vec& /*action*/, Mat& /*fx*/,
                         Mat& /*fu*/) const {
    return false;
  }
};

// Open-loop rollout: states[0] = s0, states[t+1] = predict(states[t], actions[t]).
std::vector<Vec> model_rollout(const DynamicsModel& model, const Vec& s0,
                               const std::vector<Vec>& actions);

}  // namespace mbrl
