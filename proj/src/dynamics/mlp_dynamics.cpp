#include "mbrl/dynamics/mlp_dynamics.hpp"

#include <cmath>
#include <numeric>

#include "mbrl/core/error.hpp"
#include "mbrl/kernels/kernels.hpp"

namespace mbrl {

Vec Normalizer::normalize(const Vec& x) const {
  if (x.size() != mean.size()) throw ContractError("Normalizer::normalize: dimension mismatch");
  return (x - mean).cwiseQuotient(std);
}

Vec Normalizer::denormalize(const Vec& x) const {
  if (x.size() != mean.size()) throw ContractError("Normalizer::denormalize: dimension mismatch");
  return x.cwiseProduct(std) + mean;
}

namespace {

std::vector<int> make_net_sizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> sizes;
  sizes.push_back(in);
  for (int h : hidden) sizes.push_back(h);
  sizes.push_back(out);
  return sizes;
}

}  // namespace

MlpDynamics::MlpDynamics(int state_dim, int action_dim, const std::vector<int>& hidden,
                         Activation activation, RngStream& init_rng)
    : state_dim_(state_dim),
      action_dim_(action_dim),
      net_(make_net_sizes(state_dim + action_dim, hidden, state_dim), activation),
      in_norm_(state_dim + action_dim),
      delta_norm_(state_dim) {
  if (state_dim < 1 || action_dim < 1)
    throw ContractError("MlpDynamics: dimensions must be >= 1");
  net_.init_params(init_rng);
}

Vec MlpDynamics::predict(const Vec& state, const Vec& action) const {
  if (state.size() != state_dim_ || action.size() != action_dim_)
    throw ContractError("MlpDynamics::predict: dimension mismatch");
  Vec in(state_dim_ + action_dim_);
  in << state, action;
  const Vec delta = delta_norm_.denormalize(net_.forward(in_norm_.normalize(in)));
  return state + delta;
}

void MlpDynamics::set_normalizers(Normalizer in, Normalizer delta) {
  if (in.mean.size() != state_dim_ + action_dim_ || delta.mean.size() != state_dim_)
    throw ContractError("MlpDynamics::set_normalizers: dimension mismatch");
  in_norm_ = std::move(in);
  delta_norm_ = std::move(delta);
}

void MlpDynamics::fit_normalization(const Batch& batch) {
  const int N = batch.size();
  if (N < 1) throw ContractError("MlpDynamics::fit_normalization: empty batch");
  if (batch.state_dim() != state_dim_ || batch.action_dim() != action_dim_)
    throw ContractError("MlpDynamics::fit_normalization: dimension mismatch");
  const int din = state_dim_ + action_dim_;

  Mat inputs(N, din);
  inputs.leftCols(state_dim_) = batch.states;
  inputs.rightCols(action_dim_) = batch.actions;
  Mat deltas = batch.next_states - batch.states;

  auto stats = [](const Mat& M) {
    Normalizer nz(static_cast<int>(M.cols()));
    nz.mean = M.colwise().mean().transpose();
    for (int j = 0; j < M.cols(); ++j) {
      const double var = (M.col(j).array() - nz.mean[j]).square().mean();
      nz.std[j] = std::max(std::sqrt(var), Normalizer::kStdFloor);
    }
    return nz;
  };
  in_norm_ = stats(inputs);
  delta_norm_ = stats(deltas);
}

double MlpDynamics::fit_epoch(const Batch& batch, int minibatch, RngStream& rng,
                              AdamState& opt, double alpha) {
  const int N = batch.size();
  if (N < 1) throw ContractError("MlpDynamics::fit_epoch: empty batch");
  if (minibatch < 1) throw ContractError("MlpDynamics::fit_epoch: minibatch must be >= 1");

  // Fisher-Yates shuffle driven by the stream
  std::vector<int> order(static_cast<std::size_t>(N));
  std::iota(order.begin(), order.end(), 0);
  for (int i = N - 1; i > 0; --i)
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(rng.uniform_int(i + 1))]);

  Mlp::Workspace ws = net_.make_workspace();
  std::vector<double> grad(static_cast<std::size_t>(net_.param_count()), 0.0);
  std::vector<double> loss_grad(static_cast<std::size_t>(state_dim_), 0.0);
  Vec in(state_dim_ + action_dim_);

  double loss_sum = 0.0;
  for (int start = 0; start < N; start += minibatch) {
    const int B = std::min(minibatch, N - start);
    std::fill(grad.begin(), grad.end(), 0.0);
    double mb_loss = 0.0;
    for (int k = 0; k < B; ++k) {
      const int i = order[static_cast<std::size_t>(start + k)];
      in.head(state_dim_) = batch.states.row(i).transpose();
      in.tail(action_dim_) = batch.actions.row(i).transpose();
      const Vec xn = in_norm_.normalize(in);
      const Vec delta =
          (batch.next_states.row(i) - batch.states.row(i)).transpose();
      const Vec target = delta_norm_.normalize(delta);
      const auto& out = net_.forward(xn.data(), ws);
      for (int j = 0; j < state_dim_; ++j) {
        const double err = out[static_cast<std::size_t>(j)] - target[j];
        mb_loss += err * err;
        loss_grad[static_cast<std::size_t>(j)] = 2.0 * err / B;
      }
      net_.backprop(ws, loss_grad.data(), grad.data());
    }
    mb_loss /= B;
    adam_step(net_.params(), grad, opt, alpha);
    loss_sum += mb_loss * B;
  }
  return loss_sum / N;
}

}  // namespace mbrl
