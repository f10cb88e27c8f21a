#pragma once

#include "mbrl/envs/env.hpp"

namespace mbrl {

struct PendulumParams {
  double g = 10.0;         // gravity, m/s^2
  double m = 1.0;          // mass, kg
  double l = 1.0;          // length, m
  double dt = 0.05;        // timestep, s
  double max_torque = 2.0; // N*m
  double max_speed = 8.0;  // rad/s
};

enum class PendulumObsMode { trig, raw };

// One semi-implicit Euler step on the raw state (theta, theta_dot):
//   theta_ddot = 3g/(2l) sin(theta) + 3u/(m l^2)
//   theta_dot' = clamp(theta_dot + theta_ddot*dt, +-max_speed)
//   theta'     = theta + theta_dot'*dt
// Torque is clamped to +-max_torque. Pure function (no wrapping applied).
Vec pendulum_step_raw(const Vec& state, double torque, const PendulumParams& p);

// Negated step reward: wrap(theta)^2 + 0.1*theta_dot^2 + 0.001*u^2.
double pendulum_stage_cost(double theta, double theta_dot, double torque);

// Torque-actuated pendulum swing-up. Episodes are fixed length (time limit
// only, never state-terminated). Observation modes:
//   trig: (cos theta, sin theta, theta_dot)  -- smooth, for model learning
//   raw:  (wrap(theta), theta_dot)           -- for trajectory optimization
// Reset draws theta ~ U[-pi, pi], theta_dot ~ U[-1, 1].
class PendulumEnv : public Env {
 public:
  explicit PendulumEnv(PendulumParams params = {},
                       PendulumObsMode mode = PendulumObsMode::trig,
                       int max_episode_steps = 200);

  const EnvSpec& spec() const override { return spec_; }
  Vec reset(RngStream& rng) override;
  StepResult step(const Vec& action) override;
  double reward_from_obs(const Vec& obs, const Vec& action) const override;
  std::unique_ptr<Env> clone() const override;

  void set_state(double theta, double theta_dot);
  double theta() const { return theta_; }
  double theta_dot() const { return theta_dot_; }
  const PendulumParams& params() const { return params_; }
  PendulumObsMode obs_mode() const { return mode_; }

 private:
  Vec observe() const;

  PendulumParams params_;
  PendulumObsMode mode_;
  EnvSpec spec_;
  double theta_ = 0.0;
  double theta_dot_ = 0.0;
};

}  // namespace mbrl
