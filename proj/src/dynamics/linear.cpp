#include "mbrl/dynamics/linear.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mbrl/core/error.hpp"

namespace mbrl {

namespace {
constexpr double kRidge = 1e-8;

std::string regressor_name(int col, int n, int m) {
  if (col < n) return "state[" + std::to_string(col) + "]";
  if (col < n + m) return "action[" + std::to_string(col - n) + "]";
  return "bias";
}
}  // namespace

LinearDynamics::LinearDynamics(Mat A, Mat B, Vec c)
    : A_(std::move(A)), B_(std::move(B)), c_(std::move(c)) {
  const auto n = A_.rows();
  if (A_.cols() != n || B_.rows() != n || c_.size() != n)
    throw ContractError("LinearDynamics: inconsistent dimensions");
  if (!A_.allFinite() || !B_.allFinite() || !c_.allFinite())
    throw NumericError("LinearDynamics: non-finite entries");
}

Vec LinearDynamics::predict(const Vec& state, const Vec& action) const {
  if (state.size() != state_dim() || action.size() != action_dim())
    throw ContractError("LinearDynamics::predict: dimension mismatch");
  return A_ * state + B_ * action + c_;
}

bool LinearDynamics::jacobians(const Vec&, const Vec&, Mat& fx, Mat& fu) const {
  fx = A_;
  fu = B_;
  return true;
}

LinearDynamics fit_linear(const Batch& batch) {
  const int N = batch.size();
  const int n = batch.state_dim();
  const int m = batch.action_dim();
  const int p = n + m + 1;
  if (N < p)
    throw NumericError("fit_linear: need at least " + std::to_string(p) +
                       " transitions, got " + std::to_string(N));

  Mat Z(N, p);
  Z.leftCols(n) = batch.states;
  Z.middleCols(n, m) = batch.actions;
  Z.col(n + m).setOnes();

  Eigen::ColPivHouseholderQR<Mat> qr(Z);
  if (qr.rank() < p) {
    const int deficient = qr.colsPermutation().indices()(qr.rank());
    throw NumericError("fit_linear: rank-deficient regressors (dimension " +
                       regressor_name(deficient, n, m) + " not identifiable)");
  }

  const Mat Gram = Z.transpose() * Z;
  const Mat G = Gram + kRidge * Mat::Identity(p, p);
  const Mat rhs = Z.transpose() * Mat(batch.next_states);
  const auto solver = G.ldlt();
  Mat theta = solver.solve(rhs);  // p x n
  // one refinement step against the undamped normal equations: drops the
  // O(lambda) ridge bias to O(lambda^2) so exact data is recovered exactly
  theta += solver.solve(rhs - Gram * theta);

  Mat A = theta.topRows(n).transpose();
  Mat B = theta.middleRows(n, m).transpose();
  Vec c = theta.row(n + m).transpose();
  return LinearDynamics(std::move(A), std::move(B), std::move(c));
}

}  // namespace mbrl
