#include "mbrl/expmgr/scheduler.hpp"

#include <cmath>

namespace mbrl {

void ParamScheduler::validate(const std::string& path) const {
  switch (kind) {
    case Kind::linear:
      if (!(span > 0.0)) throw ConfigError(path + ".span", "must be > 0");
      break;
    case Kind::exponential:
      if (!(rate > 0.0)) throw ConfigError(path + ".rate", "must be > 0");
      break;
    case Kind::piecewise:
      if (values.size() != breakpoints.size() + 1)
        throw ConfigError(path + ".values",
                          "needs exactly one more entry than breakpoints");
      for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
          throw ConfigError(path + ".breakpoints", "must be strictly increasing");
      break;
  }
}

double ParamScheduler::value(const GlobalStatus& status) const {
  const double t = status.get(over_key);
  switch (kind) {
    case Kind::linear: {
      const double frac = std::min(t / span, 1.0);
      return init + (final_value - init) * frac;
    }
    case Kind::exponential:
      return init * std::pow(rate, t);
    case Kind::piecewise: {
      std::size_t i = 0;
      while (i < breakpoints.size() && t >= breakpoints[i]) ++i;
      return values[i];
    }
  }
  throw ContractError("ParamScheduler::value: bad kind");
}

double ValueRef::resolve(const SchedulerSet& schedulers, const GlobalStatus& status) const {
  if (!is_ref()) return constant;
  const auto it = schedulers.find(scheduler);
  if (it == schedulers.end())
    throw ConfigUnresolvedRefError(scheduler, "scheduler not defined");
  return it->second.value(status);
}

}  // namespace mbrl
