// AVX2 backend. Mirrors the scalar reference arithmetic exactly: 4-wide
// vector lanes hold the interleaved partial sums s0..s3, the horizontal
// reduction is (s0+s2)+(s1+s3), tails run the scalar expressions, and no
// FMA is emitted (mul+add stay separate). Compiled with -mavx2 and
// -ffp-contract=off; only dispatched to when the CPU reports AVX2.

#if defined(__x86_64__) || defined(_M_X64)

#include "backend.hpp"

#include <immintrin.h>

#include <cmath>

namespace mbrl::kernels {
namespace {

inline double hsum4(__m256d acc) {
  // lanes (s0,s1,s2,s3) -> (s0+s2, s1+s3) -> (s0+s2)+(s1+s3)
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  double total = hsum4(acc);
  for (std::size_t i = n4; i < n; ++i) total += a[i] * b[i];
  return total;
}

double sum_sq_avx2(const double* x, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double total = hsum4(acc);
  for (std::size_t i = n4; i < n; ++i) total += x[i] * x[i];
  return total;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  const __m256d va = _mm256_set1_pd(a);
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d v = _mm256_add_pd(_mm256_loadu_pd(y + i),
                              _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, v);
  }
  for (std::size_t i = n4; i < n; ++i) y[i] += a * x[i];
}

void matvec_avx2(const double* W, const double* x, const double* bias, double* y,
                 std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = dot_avx2(W + r * cols, x, cols) + bias[r];
}

void matvec_t_avx2(const double* W, const double* g, double* out,
                   std::size_t rows, std::size_t cols) {
  for (std::size_t c = 0; c < cols; ++c) out[c] = 0.0;
  for (std::size_t r = 0; r < rows; ++r)
    axpy_avx2(g[r], W + r * cols, out, cols);
}

void ger_acc_avx2(double* W, const double* g, const double* x,
                  std::size_t rows, std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r)
    axpy_avx2(g[r], x, W + r * cols, cols);
}

void adam_avx2(double* p, const double* g, double* m, double* v, std::size_t n,
               double alpha, double beta1, double beta2, double eps,
               double bc1, double bc2) {
  const double c1 = 1.0 - beta1;
  const double c2 = 1.0 - beta2;
  const std::size_t n4 = n - n % 4;
  const __m256d vb1 = _mm256_set1_pd(beta1), vc1 = _mm256_set1_pd(c1);
  const __m256d vb2 = _mm256_set1_pd(beta2), vc2 = _mm256_set1_pd(c2);
  const __m256d va = _mm256_set1_pd(alpha), veps = _mm256_set1_pd(eps);
  const __m256d vbc1 = _mm256_set1_pd(bc1), vbc2 = _mm256_set1_pd(bc2);
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d gi = _mm256_loadu_pd(g + i);
    __m256d mi = _mm256_add_pd(_mm256_mul_pd(vb1, _mm256_loadu_pd(m + i)),
                               _mm256_mul_pd(vc1, gi));
    __m256d vi = _mm256_add_pd(_mm256_mul_pd(vb2, _mm256_loadu_pd(v + i)),
                               _mm256_mul_pd(vc2, _mm256_mul_pd(gi, gi)));
    _mm256_storeu_pd(m + i, mi);
    _mm256_storeu_pd(v + i, vi);
    __m256d num = _mm256_mul_pd(va, _mm256_mul_pd(mi, vbc1));
    __m256d den = _mm256_add_pd(_mm256_sqrt_pd(_mm256_mul_pd(vi, vbc2)), veps);
    __m256d pi = _mm256_sub_pd(_mm256_loadu_pd(p + i), _mm256_div_pd(num, den));
    _mm256_storeu_pd(p + i, pi);
  }
  for (std::size_t i = n4; i < n; ++i) {
    m[i] = beta1 * m[i] + c1 * g[i];
    v[i] = beta2 * v[i] + c2 * (g[i] * g[i]);
    p[i] -= alpha * (m[i] * bc1) / (std::sqrt(v[i] * bc2) + eps);
  }
}

void relu_avx2(const double* x, double* y, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    // cmp+and instead of max so -0.0 and NaN inputs map to +0.0 like the
    // scalar (x > 0 ? x : 0) does
    __m256d mask = _mm256_cmp_pd(v, zero, _CMP_GT_OQ);
    _mm256_storeu_pd(y + i, _mm256_and_pd(mask, v));
  }
  for (std::size_t i = n4; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_avx2(const double* x, const double* dy, double* dx, std::size_t n) {
  const std::size_t n4 = n - n % 4;
  const __m256d zero = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n4; i += 4) {
    __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_GT_OQ);
    _mm256_storeu_pd(dx + i, _mm256_and_pd(mask, _mm256_loadu_pd(dy + i)));
  }
  for (std::size_t i = n4; i < n; ++i) dx[i] = x[i] > 0.0 ? dy[i] : 0.0;
}

}  // namespace

const OpTable& avx2_ops() {
  static const OpTable t{matvec_avx2, matvec_t_avx2, ger_acc_avx2,
                         axpy_avx2,   dot_avx2,      sum_sq_avx2,
                         adam_avx2,   relu_avx2,     relu_backward_avx2};
  return t;
}

}  // namespace mbrl::kernels

#endif  // x86-64
