#include "mbrl/fapprox/adam.hpp"

#include <cmath>
#include <string>

#include "mbrl/core/error.hpp"
#include "mbrl/kernels/kernels.hpp"

namespace mbrl {

void adam_step(std::vector<double>& params, const std::vector<double>& grads,
               AdamState& state, double alpha) {
  const std::size_t n = params.size();
  if (grads.size() != n || state.m.size() != n || state.v.size() != n)
    throw ContractError("adam_step: shape mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (!std::isfinite(grads[i]))
      throw NumericError("adam_step: non-finite gradient at index " + std::to_string(i) +
                         " (update rejected)");
  state.t += 1;
  const double bc1 = 1.0 / (1.0 - std::pow(state.beta1, static_cast<double>(state.t)));
  const double bc2 = 1.0 / (1.0 - std::pow(state.beta2, static_cast<double>(state.t)));
  kernels::adam_update(params.data(), grads.data(), state.m.data(), state.v.data(), n,
                       alpha, state.beta1, state.beta2, state.eps, bc1, bc2);
}

}  // namespace mbrl
