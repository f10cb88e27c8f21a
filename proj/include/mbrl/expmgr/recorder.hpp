#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "mbrl/expmgr/status.hpp"

namespace mbrl {

// Time source for record/log timestamps. The logical clock starts at zero
// and advances a fixed tick per recorded entry, which keeps result files
// byte-reproducible across runs; the wall clock reports real elapsed
// seconds at the cost of that reproducibility.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now() const = 0;
  virtual void on_record_append() {}
};

class LogicalClock : public Clock {
 public:
  explicit LogicalClock(double tick_seconds = 1e-3) : tick_(tick_seconds) {}
  double now() const override { return t_; }
  void on_record_append() override { t_ += tick_; }

 private:
  double tick_;
  double t_ = 0.0;
};

class WallClock : public Clock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  double now() const override {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct RecordEntry {
  std::string key;
  double value = 0.0;
  bool anomaly = false;  // value was non-finite when appended
  double time_s = 0.0;
  std::vector<std::pair<std::string, double>> snapshot;
};

// Append-only result log. Every entry carries the status snapshot taken
// atomically with the append; entries are never mutated or reordered.
// Non-finite values are kept and flagged, not dropped.
class Recorder {
 public:
  explicit Recorder(Clock& clock) : clock_(clock) {}

  void append(const std::string& key, double value, const GlobalStatus& status);

  const std::vector<RecordEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  // Keys in first-appearance order.
  std::vector<std::string> keys() const;
  std::vector<const RecordEntry*> entries_for(const std::string& key) const;
  bool has_key(const std::string& key) const;

 private:
  Clock& clock_;
  std::vector<RecordEntry> entries_;
};

}  // namespace mbrl
