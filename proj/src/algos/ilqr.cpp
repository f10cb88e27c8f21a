#include "mbrl/algos/ilqr.hpp"

#include <Eigen/Cholesky>
#include <cmath>

#include "mbrl/core/error.hpp"

namespace mbrl {
namespace {

void fd_jacobians(const DynamicsModel& model, const Vec& x, const Vec& u, double h,
                  Mat& fx, Mat& fu) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(u.size());
  fx.resize(n, n);
  fu.resize(n, m);
  Vec xp = x, xm = x;
  for (int j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    fx.col(j) = (model.predict(xp, u) - model.predict(xm, u)) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  Vec up = u, um = u;
  for (int j = 0; j < m; ++j) {
    up[j] = u[j] + h;
    um[j] = u[j] - h;
    fu.col(j) = (model.predict(x, up) - model.predict(x, um)) / (2.0 * h);
    up[j] = u[j];
    um[j] = u[j];
  }
}

// Central-difference gradient/Hessian of a scalar function of (x, u).
void fd_cost_quadratics(const CostFunction& cost, const Vec& x, const Vec& u, double h,
                        Vec& cx, Vec& cu, Mat& cxx, Mat& cuu, Mat& cux) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(u.size());
  auto c = [&](const Vec& xx, const Vec& uu) { return cost.stage(xx, uu); };

  cx.resize(n);
  cu.resize(m);
  cxx.resize(n, n);
  cuu.resize(m, m);
  cux.resize(m, n);

  Vec xa = x, xb = x, ua = u, ub = u;
  for (int i = 0; i < n; ++i) {
    xa[i] = x[i] + h;
    xb[i] = x[i] - h;
    cx[i] = (c(xa, u) - c(xb, u)) / (2.0 * h);
    xa[i] = x[i];
    xb[i] = x[i];
  }
  for (int i = 0; i < m; ++i) {
    ua[i] = u[i] + h;
    ub[i] = u[i] - h;
    cu[i] = (c(x, ua) - c(x, ub)) / (2.0 * h);
    ua[i] = u[i];
    ub[i] = u[i];
  }
  auto second = [&](auto eval, int i, int j) {
    // four-point mixed central difference
    return (eval(i, +1, j, +1) - eval(i, +1, j, -1) - eval(i, -1, j, +1) +
            eval(i, -1, j, -1)) /
           (4.0 * h * h);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = second(
          [&](int a, int sa, int b, int sb) {
            Vec xx = x;
            xx[a] += sa * h;
            xx[b] += sb * h;
            return c(xx, u);
          },
          i, j);
      cxx(i, j) = v;
      cxx(j, i) = v;
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = second(
          [&](int a, int sa, int b, int sb) {
            Vec uu = u;
            uu[a] += sa * h;
            uu[b] += sb * h;
            return c(x, uu);
          },
          i, j);
      cuu(i, j) = v;
      cuu(j, i) = v;
    }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      cux(i, j) = second(
          [&](int a, int sa, int b, int sb) {
            Vec uu = u;
            Vec xx = x;
            uu[a] += sa * h;
            xx[b] += sb * h;
            return c(xx, uu);
          },
          i, j);
}

void fd_terminal_quadratics(const CostFunction& cost, const Vec& x, double h, Vec& cx,
                            Mat& cxx) {
  const int n = static_cast<int>(x.size());
  cx.resize(n);
  cxx.resize(n, n);
  Vec xa = x, xb = x;
  for (int i = 0; i < n; ++i) {
    xa[i] = x[i] + h;
    xb[i] = x[i] - h;
    cx[i] = (cost.terminal(xa) - cost.terminal(xb)) / (2.0 * h);
    xa[i] = x[i];
    xb[i] = x[i];
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      Vec xpp = x, xpm = x, xmp = x, xmm = x;
      xpp[i] += h;
      xpp[j] += h;
      xpm[i] += h;
      xpm[j] -= h;
      xmp[i] -= h;
      xmp[j] += h;
      xmm[i] -= h;
      xmm[j] -= h;
      const double v = (cost.terminal(xpp) - cost.terminal(xpm) - cost.terminal(xmp) +
                        cost.terminal(xmm)) /
                       (4.0 * h * h);
      cxx(i, j) = v;
      cxx(j, i) = v;
    }
}

bool all_finite(const Mat& m) { return m.allFinite(); }
bool all_finite(const Vec& v) { return v.allFinite(); }

}  // namespace

const char* ilqr_status_name(IlqrStatus s) {
  switch (s) {
    case IlqrStatus::converged: return "converged";
    case IlqrStatus::max_iterations: return "max_iterations";
    case IlqrStatus::mu_overflow: return "mu_overflow";
  }
  return "?";
}

IlqrDerivs ilqr_derivatives(const DynamicsModel& model, const CostFunction& cost,
                            const std::vector<Vec>& X, const std::vector<Vec>& U,
                            double fd_step) {
  if (X.size() != U.size() + 1)
    throw ContractError("ilqr_derivatives: X must have length T+1, U length T");
  const int T = static_cast<int>(U.size());
  IlqrDerivs d;
  d.fx.resize(T);
  d.fu.resize(T);
  d.cx.resize(T);
  d.cu.resize(T);
  d.cxx.resize(T);
  d.cuu.resize(T);
  d.cux.resize(T);
  for (int t = 0; t < T; ++t) {
    const Vec& x = X[static_cast<std::size_t>(t)];
    const Vec& u = U[static_cast<std::size_t>(t)];
    if (!model.jacobians(x, u, d.fx[t], d.fu[t]))
      fd_jacobians(model, x, u, fd_step, d.fx[t], d.fu[t]);
    if (!cost.quadratics(x, u, d.cx[t], d.cu[t], d.cxx[t], d.cuu[t], d.cux[t]))
      fd_cost_quadratics(cost, x, u, fd_step, d.cx[t], d.cu[t], d.cxx[t], d.cuu[t],
                         d.cux[t]);
    if (!all_finite(d.fx[t]) || !all_finite(d.fu[t]) || !all_finite(d.cx[t]) ||
        !all_finite(d.cu[t]) || !all_finite(d.cxx[t]) || !all_finite(d.cuu[t]) ||
        !all_finite(d.cux[t]))
      throw NumericError("ilqr_derivatives: non-finite derivative at step " +
                         std::to_string(t));
  }
  if (!cost.terminal_quadratics(X.back(), d.cx_T, d.cxx_T))
    fd_terminal_quadratics(cost, X.back(), fd_step, d.cx_T, d.cxx_T);
  if (!all_finite(d.cx_T) || !all_finite(d.cxx_T))
    throw NumericError("ilqr_derivatives: non-finite terminal derivative");
  return d;
}

std::optional<IlqrGains> ilqr_backward_pass(const IlqrDerivs& d, double mu) {
  const int T = d.horizon();
  IlqrGains g;
  g.k.resize(T);
  g.K.resize(T);

  Vec Vx = d.cx_T;
  Mat Vxx = d.cxx_T;
  for (int t = T - 1; t >= 0; --t) {
    const Mat& fx = d.fx[t];
    const Mat& fu = d.fu[t];

    const Vec Qx = d.cx[t] + fx.transpose() * Vx;
    const Vec Qu = d.cu[t] + fu.transpose() * Vx;
    const Mat Qxx = d.cxx[t] + fx.transpose() * Vxx * fx;
    // Levenberg-style regularization directly on Q_uu; in the mu -> inf
    // limit both gains vanish and the controller freezes
    Mat Quu = d.cuu[t] + fu.transpose() * Vxx * fu +
              mu * Mat::Identity(fu.cols(), fu.cols());
    const Mat Qux = d.cux[t] + fu.transpose() * Vxx * fx;

    Quu = 0.5 * (Quu + Quu.transpose());
    Eigen::LLT<Mat> llt(Quu);
    if (llt.info() != Eigen::Success) return std::nullopt;

    g.k[t] = -llt.solve(Qu);
    g.K[t] = -llt.solve(Qux);
    g.dv1 += g.k[t].dot(Qu);
    g.dv2 += 0.5 * g.k[t].dot(Quu * g.k[t]);

    Vx = Qx + g.K[t].transpose() * Quu * g.k[t] + g.K[t].transpose() * Qu +
         Qux.transpose() * g.k[t];
    Vxx = Qxx + g.K[t].transpose() * Quu * g.K[t] + g.K[t].transpose() * Qux +
          Qux.transpose() * g.K[t];
    Vxx = 0.5 * (Vxx + Vxx.transpose());
    if (!all_finite(Vx) || !all_finite(Vxx)) return std::nullopt;
  }
  return g;
}

IlqrForwardResult ilqr_forward_pass(const DynamicsModel& model, const CostFunction& cost,
                                    const std::vector<Vec>& X, const std::vector<Vec>& U,
                                    const IlqrGains& gains, double alpha) {
  const int T = static_cast<int>(U.size());
  IlqrForwardResult r;
  r.X.resize(static_cast<std::size_t>(T) + 1);
  r.U.resize(static_cast<std::size_t>(T));
  r.X[0] = X[0];
  for (int t = 0; t < T; ++t) {
    const Vec dx = r.X[static_cast<std::size_t>(t)] - X[static_cast<std::size_t>(t)];
    r.U[static_cast<std::size_t>(t)] =
        U[static_cast<std::size_t>(t)] + alpha * gains.k[static_cast<std::size_t>(t)] +
        gains.K[static_cast<std::size_t>(t)] * dx;
    if (!all_finite(r.U[static_cast<std::size_t>(t)])) {
      r.finite = false;
      return r;
    }
    r.X[static_cast<std::size_t>(t) + 1] =
        model.predict(r.X[static_cast<std::size_t>(t)], r.U[static_cast<std::size_t>(t)]);
    if (!all_finite(r.X[static_cast<std::size_t>(t) + 1])) {
      r.finite = false;
      return r;
    }
  }
  r.cost = trajectory_cost(cost, r.X, r.U);
  if (!std::isfinite(r.cost)) r.finite = false;
  return r;
}

IlqrResult ilqr_solve(const IlqrOptions& opt, const DynamicsModel& model,
                      const CostFunction& cost, const Vec& x0, std::vector<Vec> U_init) {
  if (static_cast<int>(U_init.size()) != opt.horizon)
    throw ContractError("ilqr_solve: U_init length must equal the horizon");

  IlqrResult res;
  res.U = std::move(U_init);
  res.X = model_rollout(model, x0, res.U);
  double current_cost = trajectory_cost(cost, res.X, res.U);
  if (!std::isfinite(current_cost))
    throw NumericError("ilqr_solve: initial trajectory has non-finite cost");
  res.cost_trace.push_back(current_cost);

  double mu = opt.mu_init;
  double grow = opt.mu_scale;
  res.status = IlqrStatus::max_iterations;

  auto bump_mu = [&]() -> bool {
    // accelerating growth: x1.6, then the factor squares each consecutive reject
    mu = std::max(mu, opt.mu_min) * grow;
    grow = grow * grow;
    return mu <= opt.mu_max;
  };

  bool need_derivs = true;
  IlqrDerivs derivs;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    if (need_derivs) {
      derivs = ilqr_derivatives(model, cost, res.X, res.U, opt.fd_step);
      need_derivs = false;
    }

    std::optional<IlqrGains> gains = ilqr_backward_pass(derivs, mu);
    while (!gains) {
      if (!bump_mu()) {
        res.status = IlqrStatus::mu_overflow;
        res.mu_final = mu;
        return res;
      }
      gains = ilqr_backward_pass(derivs, mu);
    }

    bool improved = false;
    for (int j = 0; j < opt.line_search_steps && !improved; ++j) {
      const double alpha = std::pow(0.5, j);
      IlqrForwardResult fr = ilqr_forward_pass(model, cost, res.X, res.U, *gains, alpha);
      if (fr.finite && fr.cost < current_cost) {
        const double decrease = current_cost - fr.cost;
        res.X = std::move(fr.X);
        res.U = std::move(fr.U);
        current_cost = fr.cost;
        res.cost_trace.push_back(current_cost);
        ++res.accepted_iterations;
        mu = std::max(mu / opt.mu_scale, opt.mu_min);
        grow = opt.mu_scale;
        need_derivs = true;
        improved = true;
        if (decrease < opt.tol) {
          res.status = IlqrStatus::converged;
          res.mu_final = mu;
          return res;
        }
      }
    }
    if (!improved) {
      const double expected_gain = -(gains->dv1 + gains->dv2);
      if (expected_gain < opt.tol) {
        res.status = IlqrStatus::converged;
        break;
      }
      if (!bump_mu()) {
        res.status = IlqrStatus::mu_overflow;
        break;
      }
    }
  }
  res.mu_final = mu;
  return res;
}

}  // namespace mbrl
