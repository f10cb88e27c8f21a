#pragma once

#include <vector>

namespace mbrl {

struct AdamState {
  long long t = 0;
  std::vector<double> m, v;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  explicit AdamState(int param_count)
      : m(static_cast<std::size_t>(param_count), 0.0),
        v(static_cast<std::size_t>(param_count), 0.0) {}
};

// Bias-corrected Adam step. A non-finite gradient rejects the whole update
// (params and state untouched) with a NumericError naming the first bad
// index.
void adam_step(std::vector<double>& params, const std::vector<double>& grads,
               AdamState& state, double alpha);

}  // namespace mbrl
