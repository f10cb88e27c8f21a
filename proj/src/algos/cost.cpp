#include "mbrl/algos/cost.hpp"

#include <cmath>

#include "mbrl/core/error.hpp"
#include "mbrl/envs/pendulum.hpp"

namespace mbrl {

QuadraticCost::QuadraticCost(Mat Q, Mat R, Mat Qf)
    : Q_(std::move(Q)), R_(std::move(R)), Qf_(std::move(Qf)) {
  if (Q_.rows() != Q_.cols() || Qf_.rows() != Q_.rows() || Qf_.cols() != Q_.cols() ||
      R_.rows() != R_.cols())
    throw ContractError("QuadraticCost: inconsistent dimensions");
}

QuadraticCost::QuadraticCost(Mat Q, Mat R) : QuadraticCost(Q, R, Q) {}

double QuadraticCost::stage(const Vec& s, const Vec& a) const {
  return s.dot(Q_ * s) + a.dot(R_ * a);
}

double QuadraticCost::terminal(const Vec& s) const { return s.dot(Qf_ * s); }

bool QuadraticCost::quadratics(const Vec& s, const Vec& a, Vec& cx, Vec& cu, Mat& cxx,
                               Mat& cuu, Mat& cux) const {
  cx = 2.0 * Q_ * s;
  cu = 2.0 * R_ * a;
  cxx = 2.0 * Q_;
  cuu = 2.0 * R_;
  cux = Mat::Zero(R_.rows(), Q_.rows());
  return true;
}

bool QuadraticCost::terminal_quadratics(const Vec& s, Vec& cx, Mat& cxx) const {
  cx = 2.0 * Qf_ * s;
  cxx = 2.0 * Qf_;
  return true;
}

double PendulumSwingupCost::stage(const Vec& s, const Vec& a) const {
  if (s.size() != 2 || a.size() != 1)
    throw ContractError("PendulumSwingupCost: raw 2-d state and 1-d action expected");
  return pendulum_stage_cost(s[0], s[1], a[0]);
}

double PendulumSwingupCost::terminal(const Vec& s) const {
  if (s.size() != 2) throw ContractError("PendulumSwingupCost: raw 2-d state expected");
  const double w = wrap_to_pi(s[0]);
  return w * w + 0.1 * s[1] * s[1];
}

bool PendulumSwingupCost::quadratics(const Vec& s, const Vec& a, Vec& cx, Vec& cu,
                                     Mat& cxx, Mat& cuu, Mat& cux) const {
  cx.resize(2);
  cx << 2.0 * wrap_to_pi(s[0]), 0.2 * s[1];
  cu.resize(1);
  cu << 0.002 * a[0];
  cxx.resize(2, 2);
  cxx << 2.0, 0.0, 0.0, 0.2;
  cuu.resize(1, 1);
  cuu << 0.002;
  cux = Mat::Zero(1, 2);
  return true;
}

bool PendulumSwingupCost::terminal_quadratics(const Vec& s, Vec& cx, Mat& cxx) const {
  cx.resize(2);
  cx << 2.0 * wrap_to_pi(s[0]), 0.2 * s[1];
  cxx.resize(2, 2);
  cxx << 2.0, 0.0, 0.0, 0.2;
  return true;
}

double PendulumSmoothCost::stage(const Vec& s, const Vec& a) const {
  if (s.size() != 2 || a.size() != 1)
    throw ContractError("PendulumSmoothCost: raw 2-d state and 1-d action expected");
  return 2.0 * (1.0 - std::cos(s[0])) + 0.1 * s[1] * s[1] + 0.001 * a[0] * a[0];
}

double PendulumSmoothCost::terminal(const Vec& s) const {
  if (s.size() != 2) throw ContractError("PendulumSmoothCost: raw 2-d state expected");
  return 2.0 * (1.0 - std::cos(s[0])) + 0.1 * s[1] * s[1];
}

bool PendulumSmoothCost::quadratics(const Vec& s, const Vec& a, Vec& cx, Vec& cu,
                                    Mat& cxx, Mat& cuu, Mat& cux) const {
  cx.resize(2);
  cx << 2.0 * std::sin(s[0]), 0.2 * s[1];
  cu.resize(1);
  cu << 0.002 * a[0];
  cxx.resize(2, 2);
  cxx << 2.0 * std::cos(s[0]), 0.0, 0.0, 0.2;
  cuu.resize(1, 1);
  cuu << 0.002;
  cux = Mat::Zero(1, 2);
  return true;
}

bool PendulumSmoothCost::terminal_quadratics(const Vec& s, Vec& cx, Mat& cxx) const {
  cx.resize(2);
  cx << 2.0 * std::sin(s[0]), 0.2 * s[1];
  cxx.resize(2, 2);
  cxx << 2.0 * std::cos(s[0]), 0.0, 0.0, 0.2;
  return true;
}

double trajectory_cost(const CostFunction& cost, const std::vector<Vec>& X,
                       const std::vector<Vec>& U) {
  if (X.size() != U.size() + 1)
    throw ContractError("trajectory_cost: X must have one more entry than U");
  double total = 0.0;
  for (std::size_t t = 0; t < U.size(); ++t) total += cost.stage(X[t], U[t]);
  return total + cost.terminal(X.back());
}

}  // namespace mbrl
