#pragma once

#include "mbrl/core/transition.hpp"
#include "mbrl/dynamics/model.hpp"
#include "mbrl/fapprox/adam.hpp"
#include "mbrl/fapprox/mlp.hpp"

namespace mbrl {

// Per-dimension affine normalization with the standard deviations floored
// at 1e-8 so denormalize(normalize(x)) round-trips.
struct Normalizer {
  Vec mean, std;

  explicit Normalizer(int dim = 0)
      : mean(Vec::Zero(dim)), std(Vec::Ones(dim)) {}
  Vec normalize(const Vec& x) const;
  Vec denormalize(const Vec& x) const;
  static constexpr double kStdFloor = 1e-8;
};

// MLP dynamics model predicting state deltas:
//   next = s + delta_norm.denormalize(net(in_norm.normalize([s; a])))
// Normalization statistics are frozen when fit_normalization runs and only
// change on an explicit refit, so predict stays a pure function between
// fits. A zero-weight net is the identity model.
class MlpDynamics : public DynamicsModel {
 public:
  MlpDynamics(int state_dim, int action_dim, const std::vector<int>& hidden,
              Activation activation, RngStream& init_rng);

  int state_dim() const override { return state_dim_; }
  int action_dim() const override { return action_dim_; }
  Vec predict(const Vec& state, const Vec& action) const override;

  // Population mean/std of inputs [s;a] and deltas (next - s) over the batch.
  void fit_normalization(const Batch& batch);

  // One shuffled-minibatch Adam pass over the batch on normalized-delta MSE.
  // Returns the sample-weighted mean minibatch loss; mutates the net.
  double fit_epoch(const Batch& batch, int minibatch, RngStream& rng,
                   AdamState& opt, double alpha);

  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }
  const Normalizer& input_normalizer() const { return in_norm_; }
  const Normalizer& delta_normalizer() const { return delta_norm_; }
  void set_normalizers(Normalizer in, Normalizer delta);

 private:
  int state_dim_, action_dim_;
  Mlp net_;
  Normalizer in_norm_, delta_norm_;
};

}  // namespace mbrl
