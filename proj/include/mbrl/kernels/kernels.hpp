#pragma once

#include <cstddef>

namespace mbrl::kernels {

// Dense fp64 kernels behind a runtime-selected backend (scalar reference,
// AVX2 on x86-64, NEON on aarch64). Every backend implements the exact same
// arithmetic:
//
//   - Reductions (dot, sum_sq) accumulate four interleaved partial sums
//     s_k = sum_i x[4i+k] * y[4i+k], combine them as (s0+s2) + (s1+s3),
//     then add the tail elements sequentially.
//   - Elementwise ops use unfused multiply/add (no FMA contraction).
//
// so results are bit-identical across backends. The equivalence tests
// assert this with memcmp.

enum class Backend { scalar, avx2, neon };

Backend active_backend();
bool backend_available(Backend b);
// Force a backend (tests). Throws std::runtime_error if unavailable here.
void force_backend(Backend b);
const char* backend_name(Backend b);

// y = W x + bias; W row-major (rows x cols), bias length rows.
void matvec(const double* W, const double* x, const double* bias, double* y,
            std::size_t rows, std::size_t cols);

// out = W^T g; W row-major (rows x cols), g length rows, out length cols.
void matvec_t(const double* W, const double* g, double* out,
              std::size_t rows, std::size_t cols);

// W += g x^T; W row-major (rows x cols).
void ger_acc(double* W, const double* g, const double* x,
             std::size_t rows, std::size_t cols);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

double dot(const double* a, const double* b, std::size_t n);
double sum_sq(const double* x, std::size_t n);

// Bias-corrected Adam, in place over flat arrays:
//   m <- beta1*m + (1-beta1)*g
//   v <- beta2*v + (1-beta2)*g^2
//   p <- p - alpha * (m*bc1) / (sqrt(v*bc2) + eps)
// with bc1 = 1/(1-beta1^t), bc2 = 1/(1-beta2^t) precomputed by the caller.
void adam_update(double* p, const double* g, double* m, double* v, std::size_t n,
                 double alpha, double beta1, double beta2, double eps,
                 double bc1, double bc2);

// y[i] = x[i] > 0 ? x[i] : 0
void relu(const double* x, double* y, std::size_t n);
// dx[i] = x[i] > 0 ? dy[i] : 0
void relu_backward(const double* x, const double* dy, double* dx, std::size_t n);

}  // namespace mbrl::kernels
