#include "mbrl/core/replay_buffer.hpp"

#include "mbrl/core/error.hpp"

namespace mbrl {

Batch BatchSource::sample(int n, RngStream& rng) const {
  if (size() < 1) throw ContractError("BatchSource::sample: empty source");
  if (n < 0) throw ContractError("BatchSource::sample: negative count");
  std::vector<Transition> picked;
  picked.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) picked.push_back(get(rng.uniform_int(size())));
  return Batch::from_transitions(picked);
}

ReplayBuffer::ReplayBuffer(int capacity)
    : capacity_(static_cast<std::size_t>(capacity)) {
  if (capacity < 1)
    throw ConfigError("buffer.capacity", "replay buffer capacity must be >= 1");
  storage_.resize(capacity_);
}

void ReplayBuffer::push(Transition t) {
  storage_[write_cursor_] = std::move(t);
  write_cursor_ = (write_cursor_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

const Transition& ReplayBuffer::get(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= size_)
    throw ContractError("ReplayBuffer::get: index out of range");
  const std::size_t oldest = size_ < capacity_ ? 0 : write_cursor_;
  return storage_[(oldest + static_cast<std::size_t>(i)) % capacity_];
}

Batch ReplayBuffer::all() const {
  std::vector<Transition> ts;
  ts.reserve(size_);
  for (int i = 0; i < size(); ++i) ts.push_back(get(i));
  return Batch::from_transitions(ts);
}

}  // namespace mbrl
