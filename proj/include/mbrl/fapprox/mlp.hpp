#pragma once

#include <string>
#include <vector>

#include "mbrl/core/rng.hpp"
#include "mbrl/core/types.hpp"

namespace mbrl {

enum class Activation { tanh, relu };

Activation activation_from_string(const std::string& s);
const char* activation_name(Activation a);

// Fully connected network with identity output and hard-coded reverse-mode
// gradients (no autodiff graph). Parameters live in one flat array, per
// layer weights-then-bias, weights row-major (fan_out x fan_in); forward
// and backprop run through the dispatched kernels.
class Mlp {
 public:
  Mlp(std::vector<int> sizes, Activation hidden_activation);

  // Weights uniform in +-sqrt(6/(fan_in+fan_out)) drawn layer by layer in
  // row-major order; biases zero.
  void init_params(RngStream& rng);

  int input_dim() const { return sizes_.front(); }
  int output_dim() const { return sizes_.back(); }
  int layer_count() const { return static_cast<int>(sizes_.size()) - 1; }
  const std::vector<int>& sizes() const { return sizes_; }
  Activation activation() const { return act_; }

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  int param_count() const { return static_cast<int>(params_.size()); }

  std::size_t weight_offset(int layer) const { return w_off_[static_cast<std::size_t>(layer)]; }
  std::size_t bias_offset(int layer) const { return b_off_[static_cast<std::size_t>(layer)]; }

  // Holds the per-layer activations of one forward pass; reused across calls.
  struct Workspace {
    std::vector<std::vector<double>> act;  // act[0] = input, act[L] = output
    std::vector<std::vector<double>> pre;  // pre-activations, pre[l] for layer output l >= 1
    std::vector<std::vector<double>> delta;
  };
  Workspace make_workspace() const;

  // Returns ws.act.back().
  const std::vector<double>& forward(const double* input, Workspace& ws) const;
  Vec forward(const Vec& input) const;

  // Accumulates d(loss)/d(params) into grad (length param_count()) for the
  // scalar loss whose output gradient is loss_grad, using the activations
  // left in ws by the preceding forward call.
  void backprop(Workspace& ws, const double* loss_grad, double* grad) const;

 private:
  std::vector<int> sizes_;
  Activation act_;
  std::vector<double> params_;
  std::vector<std::size_t> w_off_, b_off_;
};

}  // namespace mbrl
