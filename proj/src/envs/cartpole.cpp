#include "mbrl/envs/cartpole.hpp"

#include <cmath>

namespace mbrl {

Vec cartpole_step(const Vec& state, double signed_force, const CartPoleParams& p) {
  if (state.size() != 4) throw ContractError("cartpole_step: state must be 4-d");
  const double x = state[0], x_dot = state[1], theta = state[2], theta_dot = state[3];
  const double total_mass = p.cart_mass + p.pole_mass;
  const double sin_t = std::sin(theta), cos_t = std::cos(theta);
  const double temp =
      (signed_force + p.pole_mass * p.pole_half_length * theta_dot * theta_dot * sin_t) /
      total_mass;
  const double theta_acc =
      (p.g * sin_t - cos_t * temp) /
      (p.pole_half_length * (4.0 / 3.0 - p.pole_mass * cos_t * cos_t / total_mass));
  const double x_acc = temp - p.pole_mass * p.pole_half_length * theta_acc * cos_t / total_mass;
  Vec out(4);
  out[0] = x + p.dt * x_dot;
  out[1] = x_dot + p.dt * x_acc;
  out[2] = theta + p.dt * theta_dot;
  out[3] = theta_dot + p.dt * theta_acc;
  return out;
}

CartPoleEnv::CartPoleEnv(CartPoleParams params, int max_episode_steps) : params_(params) {
  if (max_episode_steps < 1)
    throw ConfigError("env.max_episode_steps", "must be >= 1");
  Vec lo(4), hi(4);
  lo << -2.0 * params_.x_limit, -1000.0, -2.0 * params_.theta_limit, -1000.0;
  hi << 2.0 * params_.x_limit, 1000.0, 2.0 * params_.theta_limit, 1000.0;
  spec_.obs_space = Space::box(lo, hi);
  spec_.action_space = Space::discrete(2);
  spec_.max_episode_steps = max_episode_steps;
}

Vec CartPoleEnv::reset(RngStream& rng) {
  for (int i = 0; i < 4; ++i) state_[i] = rng.uniform(-0.05, 0.05);
  begin_episode();
  return state_;
}

void CartPoleEnv::set_state(const Vec& state) {
  if (state.size() != 4) throw ContractError("CartPoleEnv::set_state: state must be 4-d");
  state_ = state;
  begin_episode();
}

bool CartPoleEnv::state_out_of_bounds() const {
  return std::abs(state_[0]) > params_.x_limit || std::abs(state_[2]) > params_.theta_limit;
}

StepResult CartPoleEnv::step(const Vec& action) {
  require_ready();
  if (!spec_.action_space.contains(action))
    throw ContractError("CartPoleEnv::step: action must be 0 or 1");
  const double f = action[0] > 0.5 ? params_.force : -params_.force;
  state_ = cartpole_step(state_, f, params_);
  StepResult r;
  r.reward = 1.0;
  r.done = count_step(state_out_of_bounds(), spec_.max_episode_steps);
  r.obs = state_;
  return r;
}

double CartPoleEnv::reward_from_obs(const Vec&, const Vec&) const { return 1.0; }

std::unique_ptr<Env> CartPoleEnv::clone() const {
  return std::make_unique<CartPoleEnv>(params_, spec_.max_episode_steps);
}

}  // namespace mbrl
