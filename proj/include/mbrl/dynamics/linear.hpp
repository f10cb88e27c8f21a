#pragma once

#include "mbrl/core/transition.hpp"
#include "mbrl/dynamics/model.hpp"

namespace mbrl {

// Affine one-step model: next = A s + B a + c.
class LinearDynamics : public DynamicsModel {
 public:
  LinearDynamics(Mat A, Mat B, Vec c);

  int state_dim() const override { return static_cast<int>(A_.rows()); }
  int action_dim() const override { return static_cast<int>(B_.cols()); }
  Vec predict(const Vec& state, const Vec& action) const override;
  bool jacobians(const Vec&, const Vec&, Mat& fx, Mat& fu) const override;

  const Mat& A() const { return A_; }
  const Mat& B() const { return B_; }
  const Vec& c() const { return c_; }

 private:
  Mat A_, B_;
  Vec c_;
};

// Least squares fit of next_state ~ A s + B a + c over the batch, solved via
// ridge-damped normal equations (lambda = 1e-8). Requires batch length
// >= n+m+1 and full-rank regressors; a rank-deficient fit names the
// deficient regressor dimension.
LinearDynamics fit_linear(const Batch& batch);

}  // namespace mbrl
