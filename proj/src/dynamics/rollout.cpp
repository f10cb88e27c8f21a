#include "mbrl/dynamics/model.hpp"

namespace mbrl {

std::vector<Vec> model_rollout(const DynamicsModel& model, const Vec& s0,
                               const std::vector<Vec>& actions) {
  std::vector<Vec> states;
  states.reserve(actions.size() + 1);
  states.push_back(s0);
  for (const Vec& a : actions) states.push_back(model.predict(states.back(), a));
  return states;
}

}  // namespace mbrl
