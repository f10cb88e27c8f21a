#include "mbrl/fapprox/mlp.hpp"

#include <cmath>

#include "mbrl/core/error.hpp"
#include "mbrl/kernels/kernels.hpp"

namespace mbrl {

Activation activation_from_string(const std::string& s) {
  if (s == "tanh") return Activation::tanh;
  if (s == "relu") return Activation::relu;
  throw ConfigError("activation", "unknown activation '" + s + "' (tanh|relu)");
}

const char* activation_name(Activation a) {
  return a == Activation::tanh ? "tanh" : "relu";
}

Mlp::Mlp(std::vector<int> sizes, Activation hidden_activation)
    : sizes_(std::move(sizes)), act_(hidden_activation) {
  if (sizes_.size() < 2) throw ContractError("Mlp: need at least input and output sizes");
  for (int d : sizes_)
    if (d < 1) throw ContractError("Mlp: layer sizes must be >= 1");
  std::size_t total = 0;
  for (int l = 0; l + 1 < static_cast<int>(sizes_.size()); ++l) {
    w_off_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l + 1]) * static_cast<std::size_t>(sizes_[l]);
    b_off_.push_back(total);
    total += static_cast<std::size_t>(sizes_[l + 1]);
  }
  params_.assign(total, 0.0);
}

void Mlp::init_params(RngStream& rng) {
  for (int l = 0; l < layer_count(); ++l) {
    const int fan_in = sizes_[l], fan_out = sizes_[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    double* w = params_.data() + w_off_[static_cast<std::size_t>(l)];
    for (int i = 0; i < fan_out * fan_in; ++i) w[i] = rng.uniform(-bound, bound);
    double* b = params_.data() + b_off_[static_cast<std::size_t>(l)];
    for (int i = 0; i < fan_out; ++i) b[i] = 0.0;
  }
}

Mlp::Workspace Mlp::make_workspace() const {
  Workspace ws;
  const int L = layer_count();
  ws.act.resize(static_cast<std::size_t>(L) + 1);
  ws.pre.resize(static_cast<std::size_t>(L) + 1);
  ws.delta.resize(static_cast<std::size_t>(L) + 1);
  for (int i = 0; i <= L; ++i) {
    ws.act[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(sizes_[i]), 0.0);
    ws.pre[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(sizes_[i]), 0.0);
    ws.delta[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(sizes_[i]), 0.0);
  }
  return ws;
}

const std::vector<double>& Mlp::forward(const double* input, Workspace& ws) const {
  const int L = layer_count();
  std::copy(input, input + sizes_[0], ws.act[0].begin());
  for (int l = 0; l < L; ++l) {
    const int rows = sizes_[l + 1], cols = sizes_[l];
    const double* W = params_.data() + w_off_[static_cast<std::size_t>(l)];
    const double* b = params_.data() + b_off_[static_cast<std::size_t>(l)];
    auto& pre = ws.pre[static_cast<std::size_t>(l) + 1];
    auto& out = ws.act[static_cast<std::size_t>(l) + 1];
    kernels::matvec(W, ws.act[static_cast<std::size_t>(l)].data(), b, pre.data(),
                    static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    if (l + 1 == L) {
      out = pre;  // identity output
    } else if (act_ == Activation::relu) {
      kernels::relu(pre.data(), out.data(), static_cast<std::size_t>(rows));
    } else {
      for (int i = 0; i < rows; ++i)
        out[static_cast<std::size_t>(i)] = std::tanh(pre[static_cast<std::size_t>(i)]);
    }
  }
  return ws.act[static_cast<std::size_t>(L)];
}

Vec Mlp::forward(const Vec& input) const {
  if (input.size() != input_dim()) throw ContractError("Mlp::forward: input dimension mismatch");
  Workspace ws = make_workspace();
  const auto& out = forward(input.data(), ws);
  Vec y(output_dim());
  for (int i = 0; i < output_dim(); ++i) y[i] = out[static_cast<std::size_t>(i)];
  return y;
}

void Mlp::backprop(Workspace& ws, const double* loss_grad, double* grad) const {
  const int L = layer_count();
  std::copy(loss_grad, loss_grad + sizes_[static_cast<std::size_t>(L)],
            ws.delta[static_cast<std::size_t>(L)].begin());
  for (int l = L - 1; l >= 0; --l) {
    const int rows = sizes_[l + 1], cols = sizes_[l];
    const double* W = params_.data() + w_off_[static_cast<std::size_t>(l)];
    const auto& delta_out = ws.delta[static_cast<std::size_t>(l) + 1];
    // dW = delta_out * act_in^T, db = delta_out
    kernels::ger_acc(grad + w_off_[static_cast<std::size_t>(l)], delta_out.data(),
                     ws.act[static_cast<std::size_t>(l)].data(),
                     static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    kernels::axpy(1.0, delta_out.data(), grad + b_off_[static_cast<std::size_t>(l)],
                  static_cast<std::size_t>(rows));
    if (l == 0) break;
    auto& delta_in = ws.delta[static_cast<std::size_t>(l)];
    kernels::matvec_t(W, delta_out.data(), delta_in.data(),
                      static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    if (act_ == Activation::relu) {
      kernels::relu_backward(ws.pre[static_cast<std::size_t>(l)].data(), delta_in.data(),
                             delta_in.data(), static_cast<std::size_t>(cols));
    } else {
      const auto& a = ws.act[static_cast<std::size_t>(l)];
      for (int i = 0; i < cols; ++i) {
        const double ai = a[static_cast<std::size_t>(i)];
        delta_in[static_cast<std::size_t>(i)] *= 1.0 - ai * ai;
      }
    }
  }
}

}  // namespace mbrl
