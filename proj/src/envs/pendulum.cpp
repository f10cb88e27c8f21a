#include "mbrl/envs/pendulum.hpp"

#include <cmath>

namespace mbrl {
namespace {

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

Vec pendulum_step_raw(const Vec& state, double torque, const PendulumParams& p) {
  if (state.size() != 2) throw ContractError("pendulum_step_raw: state must be 2-d");
  const double u = clamp(torque, -p.max_torque, p.max_torque);
  const double theta = state[0];
  const double theta_dot = state[1];
  const double acc = 3.0 * p.g / (2.0 * p.l) * std::sin(theta) + 3.0 * u / (p.m * p.l * p.l);
  const double new_dot = clamp(theta_dot + acc * p.dt, -p.max_speed, p.max_speed);
  Vec out(2);
  out[0] = theta + new_dot * p.dt;
  out[1] = new_dot;
  return out;
}

double pendulum_stage_cost(double theta, double theta_dot, double torque) {
  const double w = wrap_to_pi(theta);
  return w * w + 0.1 * theta_dot * theta_dot + 0.001 * torque * torque;
}

PendulumEnv::PendulumEnv(PendulumParams params, PendulumObsMode mode, int max_episode_steps)
    : params_(params), mode_(mode) {
  if (max_episode_steps < 1)
    throw ConfigError("env.max_episode_steps", "must be >= 1");
  const double ms = params_.max_speed;
  if (mode_ == PendulumObsMode::trig) {
    Vec lo(3), hi(3);
    lo << -1.0, -1.0, -ms;
    hi << 1.0, 1.0, ms;
    spec_.obs_space = Space::box(lo, hi);
  } else {
    Vec lo(2), hi(2);
    lo << -3.14159265358979323846, -ms;
    hi << 3.14159265358979323846, ms;
    spec_.obs_space = Space::box(lo, hi);
  }
  Vec alo(1), ahi(1);
  alo << -params_.max_torque;
  ahi << params_.max_torque;
  spec_.action_space = Space::box(alo, ahi);
  spec_.max_episode_steps = max_episode_steps;
}

Vec PendulumEnv::observe() const {
  if (mode_ == PendulumObsMode::trig) {
    Vec o(3);
    o << std::cos(theta_), std::sin(theta_), theta_dot_;
    return o;
  }
  Vec o(2);
  o << wrap_to_pi(theta_), theta_dot_;
  return o;
}

Vec PendulumEnv::reset(RngStream& rng) {
  theta_ = rng.uniform(-3.14159265358979323846, 3.14159265358979323846);
  theta_dot_ = rng.uniform(-1.0, 1.0);
  begin_episode();
  return observe();
}

void PendulumEnv::set_state(double theta, double theta_dot) {
  theta_ = theta;
  theta_dot_ = theta_dot;
  begin_episode();
}

StepResult PendulumEnv::step(const Vec& action) {
  require_ready();
  if (action.size() != 1) throw ContractError("PendulumEnv::step: action must be 1-d");
  const double u = clamp(action[0], -params_.max_torque, params_.max_torque);
  const double reward = -pendulum_stage_cost(theta_, theta_dot_, u);
  Vec s(2);
  s << theta_, theta_dot_;
  const Vec next = pendulum_step_raw(s, u, params_);
  theta_ = next[0];
  theta_dot_ = next[1];
  StepResult r;
  r.reward = reward;
  r.done = count_step(false, spec_.max_episode_steps);
  r.obs = observe();
  return r;
}

double PendulumEnv::reward_from_obs(const Vec& obs, const Vec& action) const {
  if (action.size() != 1) throw ContractError("PendulumEnv::reward_from_obs: action must be 1-d");
  const double u = clamp(action[0], -params_.max_torque, params_.max_torque);
  double theta, theta_dot;
  if (mode_ == PendulumObsMode::trig) {
    if (obs.size() != 3) throw ContractError("PendulumEnv::reward_from_obs: obs must be 3-d");
    theta = std::atan2(obs[1], obs[0]);
    theta_dot = obs[2];
  } else {
    if (obs.size() != 2) throw ContractError("PendulumEnv::reward_from_obs: obs must be 2-d");
    theta = obs[0];
    theta_dot = obs[1];
  }
  return -pendulum_stage_cost(theta, theta_dot, u);
}

std::unique_ptr<Env> PendulumEnv::clone() const {
  return std::make_unique<PendulumEnv>(params_, mode_, spec_.max_episode_steps);
}

}  // namespace mbrl
