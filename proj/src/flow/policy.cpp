#include "mbrl/flow/policy.hpp"

#include "mbrl/core/error.hpp"

namespace mbrl {

DqnPolicy::DqnPolicy(std::unique_ptr<DqnLearner> learner, ValueRef learning_rate,
                     int learning_starts)
    : learner_(std::move(learner)),
      lr_(std::move(learning_rate)),
      learning_starts_(learning_starts) {
  if (!learner_) throw ContractError("DqnPolicy: null learner");
  if (learning_starts_ < 1)
    throw ConfigError("algorithm.learning_starts", "must be >= 1");
}

Vec DqnPolicy::act(const Vec& obs, RngStream&) {
  Vec a(1);
  a[0] = static_cast<double>(learner_->act_greedy(obs));
  return a;
}

std::optional<double> DqnPolicy::train_step(const BatchSource& source,
                                            const SchedulerSet& schedulers,
                                            const GlobalStatus& status, RngStream& rng) {
  if (source.size() < learning_starts_) return std::nullopt;
  const double alpha = lr_.resolve(schedulers, status);
  return learner_->train_step(source, rng, alpha);
}

IlqrPolicy::IlqrPolicy(IlqrOptions options, const DynamicsModel& model,
                       const CostFunction& cost, Space action_space)
    : options_(options), model_(model), cost_(cost), action_space_(std::move(action_space)) {}

void IlqrPolicy::episode_begin(const Vec& obs0) {
  auto plan = std::make_shared<Plan>();
  std::vector<Vec> u0(static_cast<std::size_t>(options_.horizon),
                      Vec::Zero(model_.action_dim()));
  plan->result = ilqr_solve(options_, model_, cost_, obs0, std::move(u0));
  // feedback gains around the final iterate; zero gains if regularization
  // cannot certify them
  const IlqrDerivs derivs =
      ilqr_derivatives(model_, cost_, plan->result.X, plan->result.U, options_.fd_step);
  const double mu = std::max(plan->result.mu_final, options_.mu_min);
  if (auto gains = ilqr_backward_pass(derivs, mu)) {
    plan->gains = std::move(gains->K);
  } else {
    plan->gains.assign(static_cast<std::size_t>(options_.horizon),
                       Mat::Zero(model_.action_dim(), model_.state_dim()));
  }
  plan->t = 0;
  plan_ = std::move(plan);
}

Vec IlqrPolicy::act(const Vec& obs, RngStream&) {
  if (!plan_) throw ContractError("IlqrPolicy::act: no plan; episode_begin not called");
  const int T = static_cast<int>(plan_->result.U.size());
  const int t = std::min(plan_->t, T - 1);
  const Vec u = plan_->result.U[static_cast<std::size_t>(t)] +
                plan_->gains[static_cast<std::size_t>(t)] *
                    (obs - plan_->result.X[static_cast<std::size_t>(t)]);
  ++plan_->t;
  return action_space_.clamp(u);
}

std::shared_ptr<void> IlqrPolicy::save_episode_state() const { return plan_; }

void IlqrPolicy::restore_episode_state(const std::shared_ptr<void>& state) {
  plan_ = std::static_pointer_cast<Plan>(state);
}

const IlqrResult& IlqrPolicy::last_plan() const {
  if (!plan_) throw ContractError("IlqrPolicy::last_plan: no plan");
  return plan_->result;
}

}  // namespace mbrl
