#include "magweyl/kernels.hpp"

// AVX2+FMA variants. Complex doubles are processed two at a time in the
// interleaved [re, im] layout. vexp/vsincos use the classic Cephes rational
// and polynomial approximations with Cody-Waite argument reduction; accuracy
// is a few ulp for exp and ~1e-15 absolute for sin/cos at |x| <= 1e6, which
// the equivalence suite checks against libm.

#ifdef MAGWEYL_HAVE_AVX2_TU

#include <immintrin.h>

#include <cmath>

namespace magweyl::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Adds the two complex lanes of v and returns the single complex sum.
inline cplx hsum_cplx(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, lo);
  return {out[0], out[1]};
}

cplx dotu_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
    __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
    __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
    __m256d t0 = _mm256_mul_pd(_mm256_permute_pd(va0, 0x5),
                               _mm256_permute_pd(vb0, 0xF));
    __m256d t1 = _mm256_mul_pd(_mm256_permute_pd(va1, 0x5),
                               _mm256_permute_pd(vb1, 0xF));
    acc0 = _mm256_add_pd(acc0,
                         _mm256_fmaddsub_pd(va0, _mm256_movedup_pd(vb0), t0));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_fmaddsub_pd(va1, _mm256_movedup_pd(vb1), t1));
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  cplx s = hsum_cplx(acc0);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

cplx dotc_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va0 = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb0 = _mm256_loadu_pd(pb + 2 * i);
    __m256d va1 = _mm256_loadu_pd(pa + 2 * i + 4);
    __m256d vb1 = _mm256_loadu_pd(pb + 2 * i + 4);
    // even lane: ar*br + ai*bi, odd lane: ai*br - ar*bi (= -Im)
    __m256d t0 = _mm256_mul_pd(_mm256_permute_pd(va0, 0x5),
                               _mm256_permute_pd(vb0, 0xF));
    __m256d t1 = _mm256_mul_pd(_mm256_permute_pd(va1, 0x5),
                               _mm256_permute_pd(vb1, 0xF));
    acc0 = _mm256_add_pd(acc0,
                         _mm256_fmsubadd_pd(va0, _mm256_movedup_pd(vb0), t0));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_fmsubadd_pd(va1, _mm256_movedup_pd(vb1), t1));
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  cplx s = hsum_cplx(acc0);
  s = cplx(s.real(), -s.imag());
  for (; i < n; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double nrm2sq_avx2(const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::norm(a[i]);
  return s;
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d vy = _mm256_loadu_pd(py + 2 * i);
    __m256d t = _mm256_mul_pd(_mm256_permute_pd(vx, 0x5), aim);
    __m256d prod = _mm256_fmaddsub_pd(vx, are, t);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_avx2(cplx alpha, cplx* x, std::size_t n) {
  double* px = reinterpret_cast<double*>(x);
  const __m256d are = _mm256_set1_pd(alpha.real());
  const __m256d aim = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(px + 2 * i);
    __m256d t = _mm256_mul_pd(_mm256_permute_pd(vx, 0x5), aim);
    _mm256_storeu_pd(px + 2 * i, _mm256_fmaddsub_pd(vx, are, t));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

// ---- exp ----

const __m256d kExpMax = _mm256_set1_pd(708.39);
const __m256d kExpMin = _mm256_set1_pd(-708.39);
const __m256d kLog2E = _mm256_set1_pd(1.4426950408889634073599);
const __m256d kC1 = _mm256_set1_pd(6.93145751953125e-1);
const __m256d kC2 = _mm256_set1_pd(1.42860682030941723212e-6);

const __m256d kExpP0 = _mm256_set1_pd(1.26177193074810590878e-4);
const __m256d kExpP1 = _mm256_set1_pd(3.02994407707441961300e-2);
const __m256d kExpP2 = _mm256_set1_pd(9.99999999999999999910e-1);
const __m256d kExpQ0 = _mm256_set1_pd(3.00198505138664455042e-6);
const __m256d kExpQ1 = _mm256_set1_pd(2.52448340349684104192e-3);
const __m256d kExpQ2 = _mm256_set1_pd(2.27265548208155028766e-1);
const __m256d kExpQ3 = _mm256_set1_pd(2.00000000000000000005e0);

inline __m256d exp_pd(__m256d x) {
  x = _mm256_min_pd(_mm256_max_pd(x, kExpMin), kExpMax);
  __m256d nf = _mm256_round_pd(
      _mm256_mul_pd(x, kLog2E),
      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(nf, kC1, x);
  r = _mm256_fnmadd_pd(nf, kC2, r);
  __m256d z = _mm256_mul_pd(r, r);
  __m256d p = _mm256_fmadd_pd(kExpP0, z, kExpP1);
  p = _mm256_fmadd_pd(p, z, kExpP2);
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_fmadd_pd(kExpQ0, z, kExpQ1);
  q = _mm256_fmadd_pd(q, z, kExpQ2);
  q = _mm256_fmadd_pd(q, z, kExpQ3);
  __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));
  // scale by 2^n
  __m128i n32 = _mm256_cvtpd_epi32(nf);
  __m256i n64 = _mm256_cvtepi32_epi64(n32);
  n64 = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  n64 = _mm256_slli_epi64(n64, 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(n64));
}

void vexp_avx2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, exp_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = std::exp(x[i]);
}

// ---- sincos ----

const __m256d kTwoOverPi = _mm256_set1_pd(6.36619772367581343076e-1);
const __m256d kMagic = _mm256_set1_pd(6755399441055744.0);  // 1.5 * 2^52
const __m256d kPio2A = _mm256_set1_pd(1.57079632673412561417e+0);
const __m256d kPio2B = _mm256_set1_pd(6.07710050630396597660e-11);
const __m256d kPio2C = _mm256_set1_pd(2.02226624871116645580e-21);

const __m256d kSin0 = _mm256_set1_pd(1.58962301576546568060e-10);
const __m256d kSin1 = _mm256_set1_pd(-2.50507477628578072866e-8);
const __m256d kSin2 = _mm256_set1_pd(2.75573136213857245213e-6);
const __m256d kSin3 = _mm256_set1_pd(-1.98412698295895385996e-4);
const __m256d kSin4 = _mm256_set1_pd(8.33333333332211858878e-3);
const __m256d kSin5 = _mm256_set1_pd(-1.66666666666666307295e-1);

const __m256d kCos0 = _mm256_set1_pd(-1.13585365213876817300e-11);
const __m256d kCos1 = _mm256_set1_pd(2.08757008419747316778e-9);
const __m256d kCos2 = _mm256_set1_pd(-2.75573141792967388112e-7);
const __m256d kCos3 = _mm256_set1_pd(2.48015872888517179954e-5);
const __m256d kCos4 = _mm256_set1_pd(-1.38888888888730564116e-3);
const __m256d kCos5 = _mm256_set1_pd(4.16666666666665929218e-2);

inline void sincos_pd(__m256d x, __m256d* vs, __m256d* vc) {
  __m256d jm = _mm256_fmadd_pd(x, kTwoOverPi, kMagic);
  __m256d j = _mm256_sub_pd(jm, kMagic);
  __m256i q = _mm256_castpd_si256(jm);
  __m256d r = _mm256_fnmadd_pd(j, kPio2A, x);
  r = _mm256_fnmadd_pd(j, kPio2B, r);
  r = _mm256_fnmadd_pd(j, kPio2C, r);
  __m256d z = _mm256_mul_pd(r, r);

  __m256d sp = _mm256_fmadd_pd(kSin0, z, kSin1);
  sp = _mm256_fmadd_pd(sp, z, kSin2);
  sp = _mm256_fmadd_pd(sp, z, kSin3);
  sp = _mm256_fmadd_pd(sp, z, kSin4);
  sp = _mm256_fmadd_pd(sp, z, kSin5);
  __m256d sinr = _mm256_fmadd_pd(_mm256_mul_pd(r, z), sp, r);

  __m256d cp = _mm256_fmadd_pd(kCos0, z, kCos1);
  cp = _mm256_fmadd_pd(cp, z, kCos2);
  cp = _mm256_fmadd_pd(cp, z, kCos3);
  cp = _mm256_fmadd_pd(cp, z, kCos4);
  cp = _mm256_fmadd_pd(cp, z, kCos5);
  __m256d cosr = _mm256_fmadd_pd(_mm256_mul_pd(z, z), cp,
                                 _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5),
                                                  _mm256_set1_pd(1.0)));

  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  __m256i qswap = _mm256_and_si256(q, one);
  __m256d swap_mask = _mm256_castsi256_pd(
      _mm256_sub_epi64(_mm256_setzero_si256(), qswap));
  __m256d s0 = _mm256_blendv_pd(sinr, cosr, swap_mask);
  __m256d c0 = _mm256_blendv_pd(cosr, sinr, swap_mask);

  const __m256d signbit = _mm256_set1_pd(-0.0);
  __m256i ssign = _mm256_slli_epi64(_mm256_and_si256(q, two), 62);
  __m256i csign = _mm256_slli_epi64(
      _mm256_and_si256(_mm256_add_epi64(q, one), two), 62);
  *vs = _mm256_xor_pd(s0, _mm256_and_pd(_mm256_castsi256_pd(ssign), signbit));
  *vc = _mm256_xor_pd(c0, _mm256_and_pd(_mm256_castsi256_pd(csign), signbit));
}

void vsincos_avx2(const double* x, double* s, double* c, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos_pd(_mm256_loadu_pd(x + i), &vs, &vc);
    _mm256_storeu_pd(s + i, vs);
    _mm256_storeu_pd(c + i, vc);
  }
  for (; i < n; ++i) {
    s[i] = std::sin(x[i]);
    c[i] = std::cos(x[i]);
  }
}

// Interleaves per-element (cos, sin) pairs into two complex vectors and
// multiplies by the matching amplitudes.
inline void cis_pack(__m256d amp, __m256d vs, __m256d vc, __m256d* out0,
                     __m256d* out1) {
  __m256d lo = _mm256_unpacklo_pd(vc, vs);  // c0 s0 c2 s2
  __m256d hi = _mm256_unpackhi_pd(vc, vs);  // c1 s1 c3 s3
  __m256d alo = _mm256_unpacklo_pd(amp, amp);
  __m256d ahi = _mm256_unpackhi_pd(amp, amp);
  *out0 = _mm256_mul_pd(_mm256_permute2f128_pd(lo, hi, 0x20),
                        _mm256_permute2f128_pd(alo, ahi, 0x20));
  *out1 = _mm256_mul_pd(_mm256_permute2f128_pd(lo, hi, 0x31),
                        _mm256_permute2f128_pd(alo, ahi, 0x31));
}

void vcis_avx2(const double* amp, const double* phase, cplx* out,
               std::size_t n) {
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos_pd(_mm256_loadu_pd(phase + i), &vs, &vc);
    __m256d o0, o1;
    cis_pack(_mm256_loadu_pd(amp + i), vs, vc, &o0, &o1);
    _mm256_storeu_pd(po + 2 * i, o0);
    _mm256_storeu_pd(po + 2 * i + 4, o1);
  }
  for (; i < n; ++i)
    out[i] = cplx(amp[i] * std::cos(phase[i]), amp[i] * std::sin(phase[i]));
}

inline __m256d cmul(__m256d a, __m256d b) {
  __m256d t = _mm256_mul_pd(_mm256_permute_pd(a, 0x5),
                            _mm256_permute_pd(b, 0xF));
  return _mm256_fmaddsub_pd(a, _mm256_movedup_pd(b), t);
}

void vcis_mul_add_avx2(const double* amp, const double* phase, const cplx* f,
                       cplx* out, std::size_t n) {
  const double* pf = reinterpret_cast<const double*>(f);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos_pd(_mm256_loadu_pd(phase + i), &vs, &vc);
    __m256d o0, o1;
    cis_pack(_mm256_loadu_pd(amp + i), vs, vc, &o0, &o1);
    __m256d f0 = _mm256_loadu_pd(pf + 2 * i);
    __m256d f1 = _mm256_loadu_pd(pf + 2 * i + 4);
    __m256d y0 = _mm256_loadu_pd(po + 2 * i);
    __m256d y1 = _mm256_loadu_pd(po + 2 * i + 4);
    _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(y0, cmul(o0, f0)));
    _mm256_storeu_pd(po + 2 * i + 4, _mm256_add_pd(y1, cmul(o1, f1)));
  }
  for (; i < n; ++i)
    out[i] += cplx(amp[i] * std::cos(phase[i]),
                   amp[i] * std::sin(phase[i])) *
              f[i];
}

cplx wsum_avx2(const double* w, const cplx* f, std::size_t n) {
  const double* pf = reinterpret_cast<const double*>(f);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vw2 = _mm256_castpd128_pd256(_mm_loadu_pd(w + i));
    __m256d vw = _mm256_permute4x64_pd(vw2, 0x50);  // w0 w0 w1 w1
    acc = _mm256_fmadd_pd(vw, _mm256_loadu_pd(pf + 2 * i), acc);
  }
  cplx s = hsum_cplx(acc);
  for (; i < n; ++i) s += w[i] * f[i];
  return s;
}

void gemv_avx2(const cplx* K, std::size_t rows, std::size_t cols,
               const cplx* x, cplx* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dotu_avx2(K + r * cols, x, cols);
}

void gemv_conj_t_avx2(const cplx* K, std::size_t rows, std::size_t cols,
                      const cplx* x, cplx* y) {
  double* py = reinterpret_cast<double*>(y);
  for (std::size_t c = 0; c < cols; ++c) y[c] = cplx(0.0, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = reinterpret_cast<const double*>(K + r * cols);
    const cplx cx = std::conj(x[r]);
    const __m256d bre = _mm256_set1_pd(cx.real());
    const __m256d bim = _mm256_set1_pd(cx.imag());
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      __m256d k = _mm256_loadu_pd(row + 2 * c);
      __m256d t = _mm256_mul_pd(_mm256_permute_pd(k, 0x5), bim);
      __m256d prod = _mm256_fmaddsub_pd(k, bre, t);
      __m256d acc = _mm256_loadu_pd(py + 2 * c);
      _mm256_storeu_pd(py + 2 * c, _mm256_add_pd(acc, prod));
    }
    for (; c < cols; ++c) y[c] += K[r * cols + c] * cx;
  }
  // accumulated K^T conj(x); conjugate in place to get K^H x
  for (std::size_t c = 0; c < cols; ++c) y[c] = std::conj(y[c]);
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops = {
      dotc_avx2, dotu_avx2,    nrm2sq_avx2,
      axpy_avx2, scal_avx2,    vexp_avx2,
      vsincos_avx2, vcis_avx2, vcis_mul_add_avx2,
      wsum_avx2, gemv_avx2,    gemv_conj_t_avx2,
  };
  return &ops;
}

}  // namespace magweyl::kernels::detail

#else

namespace magweyl::kernels::detail {
const Ops* avx2_ops() { return nullptr; }
}  // namespace magweyl::kernels::detail

#endif  // MAGWEYL_HAVE_AVX2_TU
