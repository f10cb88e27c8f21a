#include "mbrl/kernels/kernels.hpp"

#include <atomic>
#include <stdexcept>

#include "backend.hpp"

namespace mbrl::kernels {
namespace {

Backend detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return Backend::avx2;
  return Backend::scalar;
#elif defined(__aarch64__)
  return Backend::neon;
#else
  return Backend::scalar;
#endif
}

const OpTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &scalar_ops();
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") ? &avx2_ops() : nullptr;
#else
      return nullptr;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return &neon_ops();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

struct Dispatch {
  std::atomic<const OpTable*> ops;
  std::atomic<Backend> backend;
  Dispatch() : backend(detect()) { ops.store(table_for(backend.load())); }
};

Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend.load(); }

bool backend_available(Backend b) { return table_for(b) != nullptr; }

void force_backend(Backend b) {
  const OpTable* t = table_for(b);
  if (!t) throw std::runtime_error(std::string("kernel backend unavailable: ") + backend_name(b));
  dispatch().ops.store(t);
  dispatch().backend.store(b);
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

void matvec(const double* W, const double* x, const double* bias, double* y,
            std::size_t rows, std::size_t cols) {
  dispatch().ops.load()->matvec(W, x, bias, y, rows, cols);
}

void matvec_t(const double* W, const double* g, double* out,
              std::size_t rows, std::size_t cols) {
  dispatch().ops.load()->matvec_t(W, g, out, rows, cols);
}

void ger_acc(double* W, const double* g, const double* x,
             std::size_t rows, std::size_t cols) {
  dispatch().ops.load()->ger_acc(W, g, x, rows, cols);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  dispatch().ops.load()->axpy(a, x, y, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  return dispatch().ops.load()->dot(a, b, n);
}

double sum_sq(const double* x, std::size_t n) {
  return dispatch().ops.load()->sum_sq(x, n);
}

void adam_update(double* p, const double* g, double* m, double* v, std::size_t n,
                 double alpha, double beta1, double beta2, double eps,
                 double bc1, double bc2) {
  dispatch().ops.load()->adam_update(p, g, m, v, n, alpha, beta1, beta2, eps, bc1, bc2);
}

void relu(const double* x, double* y, std::size_t n) {
  dispatch().ops.load()->relu(x, y, n);
}

void relu_backward(const double* x, const double* dy, double* dx, std::size_t n) {
  dispatch().ops.load()->relu_backward(x, dy, dx, n);
}

}  // namespace mbrl::kernels
