#include "mbrl/core/transition.hpp"

#include "mbrl/core/error.hpp"

namespace mbrl {

Transition Batch::row(int i) const {
  if (i < 0 || i >= size()) throw ContractError("Batch::row: index out of range");
  Transition t;
  t.state = states.row(i).transpose();
  t.action = actions.row(i).transpose();
  t.reward = rewards[i];
  t.next_state = next_states.row(i).transpose();
  t.done = dones[static_cast<std::size_t>(i)] != 0;
  return t;
}

Batch Batch::from_transitions(const std::vector<Transition>& ts) {
  Batch b;
  const int n = static_cast<int>(ts.size());
  if (n == 0) {
    b.states.resize(0, 0);
    b.actions.resize(0, 0);
    b.next_states.resize(0, 0);
    b.rewards.resize(0);
    return b;
  }
  const int ds = static_cast<int>(ts[0].state.size());
  const int da = static_cast<int>(ts[0].action.size());
  b.states.resize(n, ds);
  b.actions.resize(n, da);
  b.next_states.resize(n, ds);
  b.rewards.resize(n);
  b.dones.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Transition& t = ts[static_cast<std::size_t>(i)];
    if (t.state.size() != ds || t.next_state.size() != ds || t.action.size() != da)
      throw ContractError("Batch::from_transitions: inconsistent dimensions");
    b.states.row(i) = t.state.transpose();
    b.actions.row(i) = t.action.transpose();
    b.next_states.row(i) = t.next_state.transpose();
    b.rewards[i] = t.reward;
    b.dones[static_cast<std::size_t>(i)] = t.done ? 1 : 0;
  }
  return b;
}

}  // namespace mbrl
