#pragma once

#include <vector>

#include "mbrl/core/types.hpp"

namespace mbrl {

// Stage/terminal cost over (state, action) trajectories. Planners minimize
// cost; for the native environments the stage cost is the negated reward.
class CostFunction {
 public:
  virtual ~CostFunction() = default;

  virtual double stage(const Vec& state, const Vec& action) const = 0;
  virtual double terminal(const Vec& state) const = 0;

  // Analytic quadratic expansion at (s, a); false -> caller falls back to
  // finite differences. cux is (action_dim x state_dim).
  virtual bool quadratics(const Vec&, const Vec&, Vec& /*cx*/, Vec& /*cu*/, Mat& /*cxx*/,
                          Mat& /*cuu*/, Mat& /*cux*/) const {
    return false;
  }
  virtual bool terminal_quadratics(const Vec&, Vec& /*cx*/, Mat& /*cxx*/) const {
    return false;
  }
};

// J = sum_t x^T Q x + u^T R u, terminal x^T Qf x.
class QuadraticCost : public CostFunction {
 public:
  QuadraticCost(Mat Q, Mat R, Mat Qf);
  QuadraticCost(Mat Q, Mat R);  // Qf = Q

  double stage(const Vec& s, const Vec& a) const override;
  double terminal(const Vec& s) const override;
  bool quadratics(const Vec& s, const Vec& a, Vec& cx, Vec& cu, Mat& cxx, Mat& cuu,
                  Mat& cux) const override;
  bool terminal_quadratics(const Vec& s, Vec& cx, Mat& cxx) const override;

  const Mat& Q() const { return Q_; }
  const Mat& R() const { return R_; }
  const Mat& Qf() const { return Qf_; }

 private:
  Mat Q_, R_, Qf_;
};

// Negated pendulum reward on raw states (wrap(theta)^2 + 0.1 theta_dot^2 +
// 0.001 u^2); terminal drops the control term. This is the shooting-planner
// cost: sampling methods handle the wrap fine.
class PendulumSwingupCost : public CostFunction {
 public:
  double stage(const Vec& s, const Vec& a) const override;
  double terminal(const Vec& s) const override;
  bool quadratics(const Vec& s, const Vec& a, Vec& cx, Vec& cu, Mat& cxx, Mat& cuu,
                  Mat& cux) const override;
  bool terminal_quadratics(const Vec& s, Vec& cx, Mat& cxx) const override;
};

// Smooth swing-up shaping 2(1-cos theta) + 0.1 theta_dot^2 + 0.001 u^2 for
// derivative-based planning: wrap(theta)^2 has stationary free-swing
// trajectories that trap local optimizers, the trig form does not. Episode
// returns still come from the environment's own reward.
class PendulumSmoothCost : public CostFunction {
 public:
  double stage(const Vec& s, const Vec& a) const override;
  double terminal(const Vec& s) const override;
  bool quadratics(const Vec& s, const Vec& a, Vec& cx, Vec& cu, Mat& cxx, Mat& cuu,
                  Mat& cux) const override;
  bool terminal_quadratics(const Vec& s, Vec& cx, Mat& cxx) const override;
};

// sum of stage costs over (X, U) plus terminal at X.back(); X has one more
// entry than U.
double trajectory_cost(const CostFunction& cost, const std::vector<Vec>& X,
                       const std::vector<Vec>& U);

}  // namespace mbrl
