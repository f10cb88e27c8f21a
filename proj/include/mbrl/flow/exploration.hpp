#pragma once

#include "mbrl/core/space.hpp"
#include "mbrl/expmgr/scheduler.hpp"

namespace mbrl {

// Stochastic perturbation layered over the greedy action. Epsilon-greedy
// replaces the action with a uniform space sample with probability eps;
// Gaussian noise adds N(0, sigma^2) per dimension and clamps to the box.
// eps/sigma are ValueRefs so schedules drive them through the shared status.
class ExplorationStrategy {
 public:
  enum class Kind { epsilon_greedy, gaussian };

  static ExplorationStrategy epsilon_greedy(ValueRef eps);
  static ExplorationStrategy gaussian(ValueRef sigma);

  Kind kind() const { return kind_; }
  const ValueRef& parameter() const { return param_; }

  Vec apply(const Vec& greedy, const Space& action_space, const SchedulerSet& schedulers,
            const GlobalStatus& status, RngStream& rng) const;

 private:
  Kind kind_ = Kind::epsilon_greedy;
  ValueRef param_;
};

}  // namespace mbrl
