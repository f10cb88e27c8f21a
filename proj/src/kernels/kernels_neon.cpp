// NEON backend (aarch64). Two float64x2_t accumulators hold the interleaved
// partials ((s0,s1) and (s2,s3)); reduction and tails match the scalar
// reference, and vmul/vadd stay unfused.

#if defined(__aarch64__)

#include "backend.hpp"

#include <arm_neon.h>

#include <cmath>

namespace mbrl::kernels {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  float64x2_t p01 = vdupq_n_f64(0.0), p23 = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n4; i += 4) {
    p01 = vaddq_f64(p01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    p23 = vaddq_f64(p23, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  // (s0+s2, s1+s3) -> (s0+s2)+(s1+s3)
  float64x2_t s = vaddq_f64(p01, p23);
  double total = vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * b[i];
  return total;
}

double sum_sq_neon(const double* x, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  float64x2_t p01 = vdupq_n_f64(0.0), p23 = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n4; i += 4) {
    float64x2_t v0 = vld1q_f64(x + i), v1 = vld1q_f64(x + i + 2);
    p01 = vaddq_f64(p01, vmulq_f64(v0, v0));
    p23 = vaddq_f64(p23, vmulq_f64(v1, v1));
  }
  float64x2_t s = vaddq_f64(p01, p23);
  double total = vgetq_lane_f64(s, 0) + vgetq_lane_f64(s, 1);
  for (std::size_t i = n4; i < n; ++i) total += x[i] * x[i];
  return total;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const std::size_t n2 = n - n % 2;
  const float64x2_t va = vdupq_n_f64(a);
  for (std::size_t i = 0; i < n2; i += 2)
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  for (std::size_t i = n2; i < n; ++i) y[i] += a * x[i];
}

void matvec_neon(const double* W, const double* x, const double* bias, double* y,
                 std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = dot_neon(W + r * cols, x, cols) + bias[r];
}

void matvec_t_neon(const double* W, const double* g, double* out,
                   std::size_t rows, std::size_t cols) {
  for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    axpy_neon(g[r], W + r * cols, out, cols);
}

void ger_acc_neon(double* W, const double* g, const double* x,
                  std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r)
    axpy_neon(g[r], x, W + r * cols, cols);
}

void adam_neon(double* p, const double* g, double* m, double* v, std::size_t n,
               double alpha, double beta1, double beta2, double eps,
               double bc1, double bc2) {
  const double c1 = 1.0 - beta1;
  const double c2 = 1.0 - beta2;
  const std::size_t n2 = n - n % 2;
  const float64x2_t vb1 = vdupq_n_f64(beta1), vc1 = vdupq_n_f64(c1);
  const float64x2_t vb2 = vdupq_n_f64(beta2), vc2 = vdupq_n_f64(c2);
  const float64x2_t va = vdupq_n_f64(alpha), veps = vdupq_n_f64(eps);
  const float64x2_t vbc1 = vdupq_n_f64(bc1), vbc2 = vdupq_n_f64(bc2);
  for (std::size_t i = 0; i < n2; i += 2) {
    float64x2_t gi = vld1q_f64(g + i);
    float64x2_t mi = vaddq_f64(vmulq_f64(vb1, vld1q_f64(m + i)), vmulq_f64(vc1, gi));
    float64x2_t vi = vaddq_f64(vmulq_f64(vb2, vld1q_f64(v + i)),
                               vmulq_f64(vc2, vmulq_f64(gi, gi)));
    vst1q_f64(m + i, mi);
    vst1q_f64(v + i, vi);
    float64x2_t num = vmulq_f64(va, vmulq_f64(mi, vbc1));
    float64x2_t den = vaddq_f64(vsqrtq_f64(vmulq_f64(vi, vbc2)), veps);
    vst1q_f64(p + i, vsubq_f64(vld1q_f64(p + i), vdivq_f64(num, den)));
  }
  for (std::size_t i = n2; i < n; ++i) {
    m[i] = beta1 * m[i] + c1 * g[i];
    v[i] = beta2 * v[i] + c2 * (g[i] * g[i]);
    p[i] -= alpha * (m[i] * bc1) / (std::sqrt(v[i] * bc2) + eps);
  }
}

void relu_neon(const double* x, double* y, std::size_t n) {
  const std::size_t n2 = n - n % 2;
  const float64x2_t zero = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n2; i += 2) {
    float64x2_t v = vld1q_f64(x + i);
    uint64x2_t mask = vcgtq_f64(v, zero);
    vst1q_f64(y + i, vreinterpretq_f64_u64(
                         vandq_u64(mask, vreinterpretq_u64_f64(v))));
  }
  for (std::size_t i = n2; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_neon(const double* x, const double* dy, double* dx, std::size_t n) {
  const std::size_t n2 = n - n % 2;
  const float64x2_t zero = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n2; i += 2) {
    uint64x2_t mask = vcgtq_f64(vld1q_f64(x + i), zero);
    vst1q_f64(dx + i, vreinterpretq_f64_u64(
                          vandq_u64(mask, vreinterpretq_u64_f64(vld1q_f64(dy + i)))));
  }
  for (std::size_t i = n2; i < n; ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
}

}  // namespace

const OpTable& neon_ops() {
  static const OpTable t{matvec_neon, matvec_t_neon, ger_acc_neon,
                         axpy_neon,   dot_neon,      sum_sq_neon,
                         adam_neon,   relu_neon,     relu_backward_neon};
  return t;
}

}  // namespace mbrl::kernels

#endif  // aarch64
