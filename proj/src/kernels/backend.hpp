#pragma once

#include <cstddef>

namespace mbrl::kernels {

// Per-backend op table. All entries must honor the arithmetic contract in
// kernels.hpp (interleaved partial sums, unfused mul/add).
struct OpTable {
  void (*matvec)(const double*, const double*, const double*, double*,
                 std::size_t, std::size_t);
  void (*matvec_t)(const double*, const double*, double*, std::size_t, std::size_t);
  void (*ger_acc)(double*, const double*, const double*, std::size_t, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum_sq)(const double*, std::size_t);
  void (*adam_update)(double*, const double*, double*, double*, std::size_t,
                      double, double, double, double, double, double);
  void (*relu)(const double*, double*, std::size_t);
  void (*relu_backward)(const double*, const double*, double*, std::size_t);
};

const OpTable& scalar_ops();

#if defined(__x86_64__) || defined(_M_X64)
const OpTable& avx2_ops();
#endif
#if defined(__aarch64__)
const OpTable& neon_ops();
#endif

}  // namespace mbrl::kernels
