#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mbrl/core/error.hpp"

namespace mbrl {

// Globally shared experiment status: the built-in counters every module can
// read (schedulers, stop conditions, record snapshots) plus explicitly
// registered custom keys. Counters only move forward; reading an
// unregistered key fails loudly.
class GlobalStatus {
 public:
  static constexpr const char* kTotalRealSamples = "total_real_samples";
  static constexpr const char* kTotalSimSamples = "total_sim_samples";
  static constexpr const char* kTotalTrainSteps = "total_train_steps";
  static constexpr const char* kTotalTestEpisodes = "total_test_episodes";
  static constexpr const char* kCycleIndex = "cycle_index";

  GlobalStatus();

  void register_counter(const std::string& key);
  void register_value(const std::string& key, double init = 0.0);
  bool has(const std::string& key) const;

  // Counters accumulate non-negative deltas.
  void add(const std::string& key, double delta);
  // Custom value keys are set directly.
  void set(const std::string& key, double value);
  double get(const std::string& key) const;

  // Registration order, built-ins first.
  std::vector<std::pair<std::string, double>> snapshot() const;

 private:
  struct Entry {
    std::string key;
    double value = 0.0;
    bool counter = false;
  };
  Entry& find(const std::string& key);
  const Entry& find(const std::string& key) const;
  std::vector<Entry> entries_;
};

}  // namespace mbrl
