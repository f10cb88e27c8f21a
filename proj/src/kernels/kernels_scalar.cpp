// Scalar reference backend. Defines the arithmetic the SIMD backends must
// reproduce bit-for-bit; compiled with -ffp-contract=off so the mul/add
// sequences stay unfused.

#include "backend.hpp"

#include <cmath>

namespace mbrl::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t i = 0; i < n4; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  double total = (s0 + s2) + (s1 + s3);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * b[i];
  return total;
}

double sum_sq_scalar(const double* x, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (std::size_t i = 0; i < n4; i += 4) {
    s0 += x[i] * x[i];
    s1 += x[i + 1] * x[i + 1];
    s2 += x[i + 2] * x[i + 2];
    s3 += x[i + 3] * x[i + 3];
  }
  double total = (s0 + s2) + (s1 + s3);
  for (std::size_t i = n4; i < n; ++i) total += x[i] * x[i];
  return total;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void matvec_scalar(const double* W, const double* x, const double* bias, double* y,
                   std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = dot_scalar(W + r * cols, x, cols) + bias[r];
}

void matvec_t_scalar(const double* W, const double* g, double* out,
                     std::size_t rows, std::size_t cols) {
  for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    axpy_scalar(g[r], W + r * cols, out, cols);
}

void ger_acc_scalar(double* W, const double* g, const double* x,
                    std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r)
    axpy_scalar(g[r], x, W + r * cols, cols);
}

void adam_scalar(double* p, const double* g, double* m, double* v, std::size_t n,
                 double alpha, double beta1, double beta2, double eps,
                 double bc1, double bc2) {
  const double c1 = 1.0 - beta1;
  const double c2 = 1.0 - beta2;
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + c1 * g[i];
    v[i] = beta2 * v[i] + c2 * (g[i] * g[i]);
    p[i] -= alpha * (m[i] * bc1) / (std::sqrt(v[i] * bc2) + eps);
  }
}

void relu_scalar(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_scalar(const double* x, const double* dy, double* dx, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
}

}  // namespace

const OpTable& scalar_ops() {
  static const OpTable t{matvec_scalar, matvec_t_scalar, ger_acc_scalar,
                         axpy_scalar,   dot_scalar,      sum_sq_scalar,
                         adam_scalar,   relu_scalar,     relu_backward_scalar};
  return t;
}

}  // namespace mbrl::kernels
