#pragma once

#include <map>
#include <string>
#include <vector>

#include "mbrl/expmgr/status.hpp"

namespace mbrl {

// Stateless parameter schedule evaluated against the shared status
// (pull-based: consumers query at use time). t = status[over_key].
struct ParamScheduler {
  enum class Kind { linear, exponential, piecewise };

  Kind kind = Kind::linear;
  std::string over_key = GlobalStatus::kTotalRealSamples;

  // linear: init + (final - init) * min(t/span, 1)
  double init = 0.0, final_value = 0.0, span = 1.0;
  // exponential: init * rate^t
  double rate = 1.0;
  // piecewise constant: values[i] on [breakpoints[i-1], breakpoints[i]),
  // so values has one more entry than breakpoints
  std::vector<double> breakpoints, values;

  void validate(const std::string& path) const;
  double value(const GlobalStatus& status) const;
};

using SchedulerSet = std::map<std::string, ParamScheduler>;

// A hyper-parameter that is either a constant or a named scheduler.
struct ValueRef {
  double constant = 0.0;
  std::string scheduler;  // empty -> constant

  ValueRef() = default;
  explicit ValueRef(double c) : constant(c) {}
  static ValueRef ref(std::string name) {
    ValueRef v;
    v.scheduler = std::move(name);
    return v;
  }
  bool is_ref() const { return !scheduler.empty(); }
  double resolve(const SchedulerSet& schedulers, const GlobalStatus& status) const;
};

}  // namespace mbrl
