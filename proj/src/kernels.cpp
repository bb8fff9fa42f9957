#include "magweyl/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace magweyl::kernels {

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const detail::Ops* resolve(Backend b) {
  if (b == Backend::avx2) return detail::avx2_ops();
  return &detail::scalar_ops();
}

Backend initial_backend() {
  if (const char* env = std::getenv("MAGWEYL_KERNEL")) {
    std::string v(env);
    if (v == "scalar") return Backend::scalar;
    if (v == "avx2" && backend_available(Backend::avx2)) return Backend::avx2;
  }
  return backend_available(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

std::atomic<const detail::Ops*> g_ops{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const detail::Ops& ops() {
  const detail::Ops* p = g_ops.load(std::memory_order_acquire);
  if (!p) {
    Backend b = initial_backend();
    p = resolve(b);
    g_backend.store(b, std::memory_order_relaxed);
    g_ops.store(p, std::memory_order_release);
  }
  return *p;
}

}  // namespace

Backend active_backend() {
  ops();
  return g_backend.load(std::memory_order_relaxed);
}

bool backend_available(Backend b) {
  if (b == Backend::scalar) return true;
  return detail::avx2_ops() != nullptr && cpu_has_avx2_fma();
}

void set_backend(Backend b) {
  if (!backend_available(b))
    throw std::runtime_error("kernel backend not available on this machine: " +
                             backend_name(b));
  g_backend.store(b, std::memory_order_relaxed);
  g_ops.store(resolve(b), std::memory_order_release);
}

std::string backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

cplx dotc(const cplx* a, const cplx* b, std::size_t n) {
  return ops().dotc(a, b, n);
}
cplx dotu(const cplx* a, const cplx* b, std::size_t n) {
  return ops().dotu(a, b, n);
}
double nrm2sq(const cplx* a, std::size_t n) { return ops().nrm2sq(a, n); }
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  ops().axpy(alpha, x, y, n);
}
void scal(cplx alpha, cplx* x, std::size_t n) { ops().scal(alpha, x, n); }
void vexp(const double* x, double* out, std::size_t n) {
  ops().vexp(x, out, n);
}
void vsincos(const double* x, double* s, double* c, std::size_t n) {
  ops().vsincos(x, s, c, n);
}
void vcis(const double* amp, const double* phase, cplx* out, std::size_t n) {
  ops().vcis(amp, phase, out, n);
}
void vcis_mul_add(const double* amp, const double* phase, const cplx* f,
                  cplx* out, std::size_t n) {
  ops().vcis_mul_add(amp, phase, f, out, n);
}
cplx wsum(const double* w, const cplx* f, std::size_t n) {
  return ops().wsum(w, f, n);
}
void gemv(const cplx* K, std::size_t rows, std::size_t cols, const cplx* x,
          cplx* y) {
  ops().gemv(K, rows, cols, x, y);
}
void gemv_conj_t(const cplx* K, std::size_t rows, std::size_t cols,
                 const cplx* x, cplx* y) {
  ops().gemv_conj_t(K, rows, cols, x, y);
}

}  // namespace magweyl::kernels
