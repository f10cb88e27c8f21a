#pragma once

#include <cstdint>
#include <vector>

#include "mbrl/core/types.hpp"

namespace mbrl {

// One environment step. Discrete actions are stored as 1-d vectors holding
// the index.
struct Transition {
  Vec state;
  Vec action;
  double reward = 0.0;
  Vec next_state;
  bool done = false;
};

// Columnar view of n transitions; all five columns have length n.
struct Batch {
  RowMat states;
  RowMat actions;
  Vec rewards;
  RowMat next_states;
  std::vector<std::uint8_t> dones;

  int size() const { return static_cast<int>(rewards.size()); }
  int state_dim() const { return static_cast<int>(states.cols()); }
  int action_dim() const { return static_cast<int>(actions.cols()); }

  Transition row(int i) const;
  static Batch from_transitions(const std::vector<Transition>& ts);
};

}  // namespace mbrl
