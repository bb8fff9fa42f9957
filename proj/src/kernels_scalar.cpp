#include "magweyl/kernels.hpp"

#include <cmath>

namespace magweyl::kernels::detail {

namespace {

cplx dotc_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

cplx dotu_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

double nrm2sq_scalar(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return s;
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(cplx alpha, cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void vexp_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void vsincos_scalar(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

void vcis_scalar(const double* amp, const double* phase, cplx* out,
                 std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = cplx(amp[i] * std::cos(phase[i]), amp[i] * std::sin(phase[i]));
}

void vcis_mul_add_scalar(const double* amp, const double* phase, const cplx* f,
                         cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] += cplx(amp[i] * std::cos(phase[i]), amp[i] * std::sin(phase[i])) *
              f[i];
}

cplx wsum_scalar(const double* w, const cplx* f, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += w[i] * f[i].real();
    im += w[i] * f[i].imag();
  }
  return {re, im};
}

void gemv_scalar(const cplx* K, std::size_t rows, std::size_t cols,
                 const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = dotu_scalar(K + r * cols, x, cols);
}

void gemv_conj_t_scalar(const cplx* K, std::size_t rows, std::size_t cols,
                        const cplx* x, cplx* y) {
  for (std::size_t c = 0; c < cols; ++c) y[c] = cplx(0.0, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const cplx* row = K + r * cols;
    const cplx xr = x[r];
    for (std::size_t c = 0; c < cols; ++c) y[c] += std::conj(row[c]) * xr;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      dotc_scalar, dotu_scalar,    nrm2sq_scalar,
      axpy_scalar, scal_scalar,    vexp_scalar,
      vsincos_scalar, vcis_scalar, vcis_mul_add_scalar,
      wsum_scalar, gemv_scalar,    gemv_conj_t_scalar,
  };
  return ops;
}

}  // namespace magweyl::kernels::detail
