#pragma once

// Random problem instances shared by property tests and the acceptance
// suite.

#include "mbrl/core/rng.hpp"
#include "mbrl/core/types.hpp"

namespace mbrl::testing {

inline Mat random_matrix(int rows, int cols, RngStream& rng, double scale = 1.0) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(-scale, scale);
  return m;
}

inline Vec random_vector(int n, RngStream& rng, double scale = 1.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-scale, scale);
  return v;
}

// Symmetric positive definite with eigenvalues bounded away from zero.
inline Mat random_spd(int n, RngStream& rng, double diag_boost = 0.5) {
  const Mat M = random_matrix(n, n, rng);
  return M * M.transpose() + diag_boost * Mat::Identity(n, n);
}

struct LqInstance {
  Mat A, B, Q, R;
  Vec x0;
  int T = 1;
};

inline LqInstance random_lq_instance(RngStream& rng, int max_n = 3, int max_m = 2,
                                     int max_T = 50) {
  LqInstance inst;
  const int n = 1 + rng.uniform_int(max_n);
  const int m = 1 + rng.uniform_int(max_m);
  inst.T = 1 + rng.uniform_int(max_T);
  inst.A = random_matrix(n, n, rng);
  inst.B = random_matrix(n, m, rng);
  inst.Q = random_spd(n, rng, 0.2);
  inst.R = random_spd(m, rng, 0.5);
  inst.x0 = random_vector(n, rng);
  return inst;
}

}  // namespace mbrl::testing
