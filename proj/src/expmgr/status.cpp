#include "mbrl/expmgr/status.hpp"

#include <algorithm>

namespace mbrl {

GlobalStatus::GlobalStatus() {
  register_counter(kTotalRealSamples);
  register_counter(kTotalSimSamples);
  register_counter(kTotalTrainSteps);
  register_counter(kTotalTestEpisodes);
  register_counter(kCycleIndex);
}

void GlobalStatus::register_counter(const std::string& key) {
  if (has(key)) throw ConfigError(key, "status key already registered");
  entries_.push_back({key, 0.0, true});
}

void GlobalStatus::register_value(const std::string& key, double init) {
  if (has(key)) throw ConfigError(key, "status key already registered");
  entries_.push_back({key, init, false});
}

bool GlobalStatus::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const Entry& e) { return e.key == key; });
}

GlobalStatus::Entry& GlobalStatus::find(const std::string& key) {
  for (Entry& e : entries_)
    if (e.key == key) return e;
  throw ConfigError(key, "status key not registered");
}

const GlobalStatus::Entry& GlobalStatus::find(const std::string& key) const {
  for (const Entry& e : entries_)
    if (e.key == key) return e;
  throw ConfigError(key, "status key not registered");
}

void GlobalStatus::add(const std::string& key, double delta) {
  Entry& e = find(key);
  if (!e.counter) throw ContractError("GlobalStatus::add: '" + key + "' is not a counter");
  if (delta < 0.0)
    throw ContractError("GlobalStatus::add: counters are monotone (negative delta on '" +
                        key + "')");
  e.value += delta;
}

void GlobalStatus::set(const std::string& key, double value) {
  Entry& e = find(key);
  if (e.counter)
    throw ContractError("GlobalStatus::set: '" + key + "' is a counter; use add()");
  e.value = value;
}

double GlobalStatus::get(const std::string& key) const { return find(key).value; }

std::vector<std::pair<std::string, double>> GlobalStatus::snapshot() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.emplace_back(e.key, e.value);
  return out;
}

}  // namespace mbrl
