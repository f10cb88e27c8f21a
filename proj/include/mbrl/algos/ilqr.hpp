#pragma once

#include <optional>
#include <vector>

#include "mbrl/algos/cost.hpp"
#include "mbrl/dynamics/model.hpp"

namespace mbrl {

struct IlqrOptions {
  int horizon = 1;
  int max_iterations = 100;
  double mu_init = 1e-6;
  double mu_min = 1e-6;
  double mu_max = 1e10;
  double mu_scale = 1.6;     // divide on accept; multiply (then square) on reject
  double tol = 1e-9;         // stop when the accepted cost decrease falls below
  int line_search_steps = 11;  // alpha = 1, 1/2, ..., 2^-(steps-1)
  double fd_step = 1e-5;     // central-difference step for non-analytic paths
};

// Dynamics and cost expansion along a nominal trajectory. cux is
// (action_dim x state_dim).
struct IlqrDerivs {
  std::vector<Mat> fx, fu;
  std::vector<Vec> cx, cu;
  std::vector<Mat> cxx, cuu, cux;
  Vec cx_T;
  Mat cxx_T;
  int horizon() const { return static_cast<int>(fx.size()); }
};

// Analytic where the model/cost provide expansions, central finite
// differences (fd_step) otherwise. Non-finite derivatives raise a
// NumericError naming the step.
IlqrDerivs ilqr_derivatives(const DynamicsModel& model, const CostFunction& cost,
                            const std::vector<Vec>& X, const std::vector<Vec>& U,
                            double fd_step = 1e-5);

struct IlqrGains {
  std::vector<Vec> k;
  std::vector<Mat> K;
  // Expected cost change of the line-searched update: dJ(alpha) ~
  // alpha*dv1 + alpha^2*dv2 (non-positive at alpha=1 for a valid pass).
  double dv1 = 0.0, dv2 = 0.0;
};

// Regularized LQ recursion. nullopt means Q_uu + mu-term lost positive
// definiteness: raise mu and retry.
std::optional<IlqrGains> ilqr_backward_pass(const IlqrDerivs& derivs, double mu);

struct IlqrForwardResult {
  std::vector<Vec> X, U;
  double cost = 0.0;
  bool finite = true;  // false -> candidate rejected (state/control blew up)
};

// u'_t = u_t + alpha*k_t + K_t (x'_t - x_t) rolled out through the model.
IlqrForwardResult ilqr_forward_pass(const DynamicsModel& model, const CostFunction& cost,
                                    const std::vector<Vec>& X, const std::vector<Vec>& U,
                                    const IlqrGains& gains, double alpha);

enum class IlqrStatus { converged, max_iterations, mu_overflow };
const char* ilqr_status_name(IlqrStatus s);

struct IlqrResult {
  IlqrStatus status = IlqrStatus::converged;
  std::vector<Vec> X, U;                 // best trajectory found
  std::vector<double> cost_trace;        // initial cost then accepted costs
  int accepted_iterations = 0;
  double mu_final = 0.0;
};

// Iterate derivatives -> backward -> line-searched forward, accepting the
// first alpha that improves the cost. mu shrinks on accept (floored at
// mu_min) and grows with an accelerating factor on reject (capped at
// mu_max, which ends the solve). The cost trace is non-increasing across
// accepted iterates. A mu_overflow result with zero accepted iterations is
// the convergence-failure case; the best trajectory rides along either way.
IlqrResult ilqr_solve(const IlqrOptions& opt, const DynamicsModel& model,
                      const CostFunction& cost, const Vec& x0, std::vector<Vec> U_init);

}  // namespace mbrl
