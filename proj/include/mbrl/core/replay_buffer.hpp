#pragma once

#include <vector>

#include "mbrl/core/rng.hpp"
#include "mbrl/core/transition.hpp"

namespace mbrl {

// Anything a learner can sample minibatches from.
class BatchSource {
 public:
  virtual ~BatchSource() = default;
  virtual int size() const = 0;
  // i in [0, size); for buffers index 0 is the oldest stored transition.
  virtual const Transition& get(int i) const = 0;

  // n transitions drawn uniformly with replacement; deterministic given the
  // stream state. Empty source -> ContractError.
  Batch sample(int n, RngStream& rng) const;
};

// Bounded FIFO transition store (ring buffer). After capacity+k pushes the
// buffer holds exactly the most recent `capacity` transitions.
class ReplayBuffer : public BatchSource {
 public:
  explicit ReplayBuffer(int capacity);

  void push(Transition t);
  int size() const override { return static_cast<int>(size_); }
  int capacity() const { return static_cast<int>(capacity_); }
  const Transition& get(int i) const override;

  // Everything stored, oldest to newest.
  Batch all() const;

 private:
  std::size_t capacity_;
  std::vector<Transition> storage_;
  std::size_t size_ = 0;
  std::size_t write_cursor_ = 0;
};

}  // namespace mbrl
