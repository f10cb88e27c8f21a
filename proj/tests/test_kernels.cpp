#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <vector>

#include "mbrl/core/rng.hpp"
#include "mbrl/kernels/kernels.hpp"

using namespace mbrl;
namespace k = mbrl::kernels;

namespace {

std::vector<double> random_array(std::size_t n, RngStream& rng, double scale = 2.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-scale, scale);
  return v;
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

bool bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

struct BackendGuard {
  k::Backend prev;
  BackendGuard() : prev(k::active_backend()) {}
  ~BackendGuard() { k::force_backend(prev); }
};

}  // namespace

TEST_CASE("simd backend matches scalar reference bit for bit") {
  if (!k::backend_available(k::Backend::avx2) && !k::backend_available(k::Backend::neon)) {
    MESSAGE("no SIMD backend on this machine; scalar-only");
    return;
  }
  const k::Backend simd =
      k::backend_available(k::Backend::avx2) ? k::Backend::avx2 : k::Backend::neon;
  BackendGuard guard;
  RngStream rng(2024, 7);

  // sizes straddling the vector width, including empty and odd tails
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 33u, 64u, 67u}) {
    const auto a = random_array(n, rng);
    const auto b = random_array(n, rng);

    k::force_backend(k::Backend::scalar);
    const double dot_s = k::dot(a.data(), b.data(), n);
    const double ss_s = k::sum_sq(a.data(), n);
    auto axpy_s = b;
    k::axpy(0.37, a.data(), axpy_s.data(), n);

    k::force_backend(simd);
    const double dot_v = k::dot(a.data(), b.data(), n);
    const double ss_v = k::sum_sq(a.data(), n);
    auto axpy_v = b;
    k::axpy(0.37, a.data(), axpy_v.data(), n);

    CHECK(bits_equal(dot_s, dot_v));
    CHECK(bits_equal(ss_s, ss_v));
    CHECK(bits_equal(axpy_s, axpy_v));
  }

  for (std::size_t rows : {1u, 3u, 8u, 13u}) {
    for (std::size_t cols : {1u, 4u, 7u, 32u, 65u}) {
      const auto W = random_array(rows * cols, rng);
      const auto x = random_array(cols, rng);
      const auto bias = random_array(rows, rng);
      const auto g = random_array(rows, rng);

      k::force_backend(k::Backend::scalar);
      std::vector<double> y_s(rows), mt_s(cols);
      auto ger_s = W;
      k::matvec(W.data(), x.data(), bias.data(), y_s.data(), rows, cols);
      k::matvec_t(W.data(), g.data(), mt_s.data(), rows, cols);
      k::ger_acc(ger_s.data(), g.data(), x.data(), rows, cols);

      k::force_backend(simd);
      std::vector<double> y_v(rows), mt_v(cols);
      auto ger_v = W;
      k::matvec(W.data(), x.data(), bias.data(), y_v.data(), rows, cols);
      k::matvec_t(W.data(), g.data(), mt_v.data(), rows, cols);
      k::ger_acc(ger_v.data(), g.data(), x.data(), rows, cols);

      CHECK(bits_equal(y_s, y_v));
      CHECK(bits_equal(mt_s, mt_v));
      CHECK(bits_equal(ger_s, ger_v));
    }
  }

  // adam + relu
  for (std::size_t n : {1u, 5u, 64u, 129u}) {
    const auto g = random_array(n, rng);
    auto p_s = random_array(n, rng);
    auto m_s = random_array(n, rng, 0.1);
    auto v_s = random_array(n, rng, 0.1);
    for (auto& vi : v_s) vi = std::abs(vi);
    auto p_v = p_s;
    auto m_v = m_s;
    auto v_v = v_s;
    const auto x = random_array(n, rng);
    const auto dy = random_array(n, rng);

    k::force_backend(k::Backend::scalar);
    k::adam_update(p_s.data(), g.data(), m_s.data(), v_s.data(), n, 1e-3, 0.9, 0.999,
                   1e-8, 10.0, 1000.0);
    std::vector<double> r_s(n), rb_s(n);
    k::relu(x.data(), r_s.data(), n);
    k::relu_backward(x.data(), dy.data(), rb_s.data(), n);

    k::force_backend(simd);
    k::adam_update(p_v.data(), g.data(), m_v.data(), v_v.data(), n, 1e-3, 0.9, 0.999,
                   1e-8, 10.0, 1000.0);
    std::vector<double> r_v(n), rb_v(n);
    k::relu(x.data(), r_v.data(), n);
    k::relu_backward(x.data(), dy.data(), rb_v.data(), n);

    CHECK(bits_equal(p_s, p_v));
    CHECK(bits_equal(m_s, m_v));
    CHECK(bits_equal(v_s, v_v));
    CHECK(bits_equal(r_s, r_v));
    CHECK(bits_equal(rb_s, rb_v));
  }
}

TEST_CASE("kernel arithmetic is correct against naive sums") {
  BackendGuard guard;
  RngStream rng(99, 1);
  for (k::Backend b : {k::Backend::scalar, k::Backend::avx2, k::Backend::neon}) {
    if (!k::backend_available(b)) continue;
    k::force_backend(b);
    const auto a = random_array(37, rng);
    const auto c = random_array(37, rng);
    long double naive = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i)
      naive += static_cast<long double>(a[i]) * c[i];
    CHECK(k::dot(a.data(), c.data(), a.size()) ==
          doctest::Approx(static_cast<double>(naive)).epsilon(1e-13));
  }
}

TEST_CASE("relu maps negative zero and negatives to positive zero") {
  BackendGuard guard;
  for (k::Backend b : {k::Backend::scalar, k::Backend::avx2, k::Backend::neon}) {
    if (!k::backend_available(b)) continue;
    k::force_backend(b);
    const double x[5] = {-0.0, -1.5, 0.0, 2.5, -3.0};
    double y[5];
    k::relu(x, y, 5);
    CHECK(bits_equal(y[0], 0.0));
    CHECK(y[1] == 0.0);
    CHECK(y[3] == 2.5);
  }
}

TEST_CASE("forcing an unavailable backend throws") {
#if defined(__x86_64__)
  CHECK_THROWS(k::force_backend(k::Backend::neon));
#else
  CHECK_THROWS(k::force_backend(k::Backend::avx2));
#endif
}
