#pragma once

// Low-level arithmetic kernels used by the operator-assembly and quadrature
// pipelines. Every routine has a scalar reference implementation and, on
// x86-64 with AVX2+FMA, a vectorized variant. The backend is chosen once at
// startup from CPU features and can be overridden with set_backend() or the
// MAGWEYL_KERNEL environment variable ("scalar" / "avx2"). The two backends
// are equivalence-tested against each other; results may differ in the last
// bits because of different accumulation orders.

#include <complex>
#include <cstddef>
#include <string>

namespace magweyl::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_available(Backend b);
void set_backend(Backend b);
std::string backend_name(Backend b);

// sum_i conj(a_i) b_i
cplx dotc(const cplx* a, const cplx* b, std::size_t n);
// sum_i a_i b_i
cplx dotu(const cplx* a, const cplx* b, std::size_t n);
// sum_i |a_i|^2
double nrm2sq(const cplx* a, std::size_t n);
// y += alpha x
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);
// x *= alpha
void scal(cplx alpha, cplx* x, std::size_t n);

// out_i = exp(x_i)
void vexp(const double* x, double* out, std::size_t n);
// s_i = sin(x_i), c_i = cos(x_i)
void vsincos(const double* x, double* s, double* c, std::size_t n);
// out_i = amp_i * exp(i phase_i)
void vcis(const double* amp, const double* phase, cplx* out, std::size_t n);
// out_i += amp_i * exp(i phase_i) * f_i
void vcis_mul_add(const double* amp, const double* phase, const cplx* f,
                  cplx* out, std::size_t n);

// sum_i w_i f_i with real weights
cplx wsum(const double* w, const cplx* f, std::size_t n);

// y = K x, K row-major (rows x cols)
void gemv(const cplx* K, std::size_t rows, std::size_t cols, const cplx* x,
          cplx* y);
// y = K^H x
void gemv_conj_t(const cplx* K, std::size_t rows, std::size_t cols,
                 const cplx* x, cplx* y);

namespace detail {

struct Ops {
  cplx (*dotc)(const cplx*, const cplx*, std::size_t);
  cplx (*dotu)(const cplx*, const cplx*, std::size_t);
  double (*nrm2sq)(const cplx*, std::size_t);
  void (*axpy)(cplx, const cplx*, cplx*, std::size_t);
  void (*scal)(cplx, cplx*, std::size_t);
  void (*vexp)(const double*, double*, std::size_t);
  void (*vsincos)(const double*, double*, double*, std::size_t);
  void (*vcis)(const double*, const double*, cplx*, std::size_t);
  void (*vcis_mul_add)(const double*, const double*, const cplx*, cplx*,
                       std::size_t);
  cplx (*wsum)(const double*, const cplx*, std::size_t);
  void (*gemv)(const cplx*, std::size_t, std::size_t, const cplx*, cplx*);
  void (*gemv_conj_t)(const cplx*, std::size_t, std::size_t, const cplx*,
                      cplx*);
};

const Ops& scalar_ops();
// Null when the binary was built without AVX2 support.
const Ops* avx2_ops();

}  // namespace detail

}  // namespace magweyl::kernels
