#pragma once

#include "mbrl/envs/env.hpp"

namespace mbrl {

struct CartPoleParams {
  double g = 9.8;               // m/s^2
  double cart_mass = 1.0;       // kg
  double pole_mass = 0.1;       // kg
  double pole_half_length = 0.5;// m
  double force = 10.0;          // N
  double dt = 0.02;             // s
  double x_limit = 2.4;         // m
  double theta_limit = 12.0 * 3.14159265358979323846 / 180.0;  // rad
};

// One explicit Euler step (old derivatives) on (x, x_dot, theta, theta_dot)
// with signed force input:
//   temp        = (F + m_p l_p theta_dot^2 sin) / (m_c + m_p)
//   theta_ddot  = (g sin - cos * temp) / (l_p (4/3 - m_p cos^2/(m_c+m_p)))
//   x_ddot      = temp - m_p l_p theta_ddot cos / (m_c + m_p)
Vec cartpole_step(const Vec& state, double signed_force, const CartPoleParams& p);

// Balancing cart-pole with two discrete actions (0: push left, 1: push
// right). Done exactly when |x| > x_limit, |theta| > theta_limit, or the
// step count reaches the episode limit; reward 1.0 per step. Reset draws
// all four state components from U[-0.05, 0.05].
class CartPoleEnv : public Env {
 public:
  explicit CartPoleEnv(CartPoleParams params = {}, int max_episode_steps = 200);

  const EnvSpec& spec() const override { return spec_; }
  Vec reset(RngStream& rng) override;
  StepResult step(const Vec& action) override;
  double reward_from_obs(const Vec& obs, const Vec& action) const override;
  std::unique_ptr<Env> clone() const override;

  void set_state(const Vec& state);
  const Vec& state() const { return state_; }
  const CartPoleParams& params() const { return params_; }
  bool state_out_of_bounds() const;

 private:
  CartPoleParams params_;
  EnvSpec spec_;
  Vec state_{Vec::Zero(4)};
};

}  // namespace mbrl
