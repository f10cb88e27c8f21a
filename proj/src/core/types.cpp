#include "mbrl/core/types.hpp"

#include <cmath>

namespace mbrl {

double wrap_to_pi(double theta) {
  constexpr double kPi = 3.14159265358979323846;
  constexpr double kTwoPi = 2.0 * kPi;
  double w = std::fmod(theta + kPi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w - kPi;
}

}  // namespace mbrl
