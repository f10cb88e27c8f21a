#include "mbrl/flow/exploration.hpp"

namespace mbrl {

ExplorationStrategy ExplorationStrategy::epsilon_greedy(ValueRef eps) {
  ExplorationStrategy s;
  s.kind_ = Kind::epsilon_greedy;
  s.param_ = std::move(eps);
  return s;
}

ExplorationStrategy ExplorationStrategy::gaussian(ValueRef sigma) {
  ExplorationStrategy s;
  s.kind_ = Kind::gaussian;
  s.param_ = std::move(sigma);
  return s;
}

Vec ExplorationStrategy::apply(const Vec& greedy, const Space& action_space,
                               const SchedulerSet& schedulers, const GlobalStatus& status,
                               RngStream& rng) const {
  if (kind_ == Kind::epsilon_greedy) {
    const double eps = param_.resolve(schedulers, status);
    if (!(eps >= 0.0 && eps <= 1.0))
      throw ConfigError("exploration.epsilon", "must lie in [0, 1]");
    if (eps > 0.0 && rng.uniform() < eps) return action_space.sample(rng);
    return greedy;
  }
  const double sigma = param_.resolve(schedulers, status);
  if (!(sigma >= 0.0)) throw ConfigError("exploration.sigma", "must be >= 0");
  if (!action_space.is_box())
    throw ConfigError("exploration", "gaussian noise needs a box action space");
  if (sigma == 0.0) return greedy;
  Vec noisy = greedy;
  for (int i = 0; i < noisy.size(); ++i) noisy[i] += sigma * rng.normal();
  return action_space.clamp(noisy);
}

}  // namespace mbrl
