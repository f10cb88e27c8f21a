#pragma once

#include "mbrl/envs/env.hpp"

namespace mbrl {

struct LtiParams {
  Mat A;       // n x n
  Mat B;       // n x m
  Mat Q;       // n x n, symmetric PSD
  Mat R;       // m x m, symmetric PD
  Vec x0;      // deterministic initial state
  int horizon = 50;
  double u_max = 1e6;  // box bound on each control dimension
};

// Discrete-time linear plant x' = A x + B u with quadratic stage reward
// r = -(x^T Q x + u^T R u). Deterministic reset to x0; done at the horizon.
// Serves as the exactly-solvable oracle plant for trajectory optimization.
class LtiEnv : public Env {
 public:
  explicit LtiEnv(LtiParams params);

  const EnvSpec& spec() const override { return spec_; }
  Vec reset(RngStream& rng) override;
  StepResult step(const Vec& action) override;
  double reward_from_obs(const Vec& obs, const Vec& action) const override;
  std::unique_ptr<Env> clone() const override;

  void set_state(const Vec& x);
  const Vec& state() const { return x_; }
  const LtiParams& params() const { return params_; }

 private:
  LtiParams params_;
  EnvSpec spec_;
  Vec x_;
};

}  // namespace mbrl
