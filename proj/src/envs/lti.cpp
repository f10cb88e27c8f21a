#include "mbrl/envs/lti.hpp"

namespace mbrl {
namespace {

void check_params(const LtiParams& p) {
  const auto n = p.A.rows();
  const auto m = p.B.cols();
  if (n == 0 || p.A.cols() != n) throw ConfigError("env.A", "A must be square and non-empty");
  if (p.B.rows() != n) throw ConfigError("env.B", "B must have the same row count as A");
  if (p.Q.rows() != n || p.Q.cols() != n) throw ConfigError("env.Q", "Q must be n x n");
  if (p.R.rows() != m || p.R.cols() != m) throw ConfigError("env.R", "R must be m x m");
  if (!p.Q.isApprox(p.Q.transpose(), 1e-12)) throw ConfigError("env.Q", "Q must be symmetric");
  if (!p.R.isApprox(p.R.transpose(), 1e-12)) throw ConfigError("env.R", "R must be symmetric");
  if (p.x0.size() != n) throw ConfigError("env.x0", "x0 must have dimension n");
  if (p.horizon < 1) throw ConfigError("env.horizon", "must be >= 1");
  if (!(p.u_max > 0)) throw ConfigError("env.u_max", "must be > 0");
}

}  // namespace

LtiEnv::LtiEnv(LtiParams params) : params_(std::move(params)) {
  check_params(params_);
  const auto n = params_.A.rows();
  const auto m = params_.B.cols();
  // generous box; the plant itself is unbounded
  spec_.obs_space = Space::box(Vec::Constant(n, -1e15), Vec::Constant(n, 1e15));
  spec_.action_space =
      Space::box(Vec::Constant(m, -params_.u_max), Vec::Constant(m, params_.u_max));
  spec_.max_episode_steps = params_.horizon;
  x_ = params_.x0;
}

Vec LtiEnv::reset(RngStream&) {
  x_ = params_.x0;
  begin_episode();
  return x_;
}

void LtiEnv::set_state(const Vec& x) {
  if (x.size() != params_.x0.size()) throw ContractError("LtiEnv::set_state: dimension mismatch");
  x_ = x;
  begin_episode();
}

StepResult LtiEnv::step(const Vec& action) {
  require_ready();
  const Vec u = spec_.action_space.clamp(action);
  const double reward = -(x_.dot(params_.Q * x_) + u.dot(params_.R * u));
  x_ = params_.A * x_ + params_.B * u;
  StepResult r;
  r.reward = reward;
  r.done = count_step(false, spec_.max_episode_steps);
  r.obs = x_;
  return r;
}

double LtiEnv::reward_from_obs(const Vec& obs, const Vec& action) const {
  if (obs.size() != params_.x0.size() || action.size() != params_.B.cols())
    throw ContractError("LtiEnv::reward_from_obs: dimension mismatch");
  return -(obs.dot(params_.Q * obs) + action.dot(params_.R * action));
}

std::unique_ptr<Env> LtiEnv::clone() const { return std::make_unique<LtiEnv>(params_); }

}  // namespace mbrl
