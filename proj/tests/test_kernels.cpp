#include "magweyl/kernels.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

using magweyl::kernels::cplx;
namespace k = magweyl::kernels;
namespace kd = magweyl::kernels::detail;

namespace {

std::vector<cplx> random_cvec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& c : v) c = cplx(u(rng), u(rng));
  return v;
}

std::vector<double> random_rvec(std::size_t n, double lo, double hi,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool have_avx2() { return k::backend_available(k::Backend::avx2); }

}  // namespace

TEST_CASE("scalar dot products agree with direct sums") {
  auto a = random_cvec(37, 1);
  auto b = random_cvec(37, 2);
  cplx expect_c(0, 0), expect_u(0, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    expect_c += std::conj(a[i]) * b[i];
    expect_u += a[i] * b[i];
  }
  const auto& ops = kd::scalar_ops();
  CHECK(std::abs(ops.dotc(a.data(), b.data(), a.size()) - expect_c) < 1e-13);
  CHECK(std::abs(ops.dotu(a.data(), b.data(), a.size()) - expect_u) < 1e-13);
}

TEST_CASE("avx2 backend matches scalar backend") {
  if (!have_avx2()) return;
  const auto& sc = kd::scalar_ops();
  const auto* vx = kd::avx2_ops();
  REQUIRE(vx != nullptr);

  for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 64u, 129u, 1000u}) {
    auto a = random_cvec(n, 10 + n);
    auto b = random_cvec(n, 20 + n);

    CAPTURE(n);
    CHECK(std::abs(sc.dotc(a.data(), b.data(), n) -
                   vx->dotc(a.data(), b.data(), n)) < 1e-12 * (1.0 + n));
    CHECK(std::abs(sc.dotu(a.data(), b.data(), n) -
                   vx->dotu(a.data(), b.data(), n)) < 1e-12 * (1.0 + n));
    CHECK(sc.nrm2sq(a.data(), n) ==
          doctest::Approx(vx->nrm2sq(a.data(), n)).epsilon(1e-13));

    auto y1 = b, y2 = b;
    const cplx alpha(0.3, -1.2);
    sc.axpy(alpha, a.data(), y1.data(), n);
    vx->axpy(alpha, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(y1[i] - y2[i]) < 1e-14);

    auto z1 = a, z2 = a;
    sc.scal(alpha, z1.data(), n);
    vx->scal(alpha, z2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(z1[i] - z2[i]) < 1e-14);
  }
}

TEST_CASE("vectorized exp matches libm over the working range") {
  if (!have_avx2()) return;
  const auto* vx = kd::avx2_ops();
  auto x = random_rvec(4096, -700.0, 700.0, 42);
  // Gaussian-weight arguments cluster near zero; cover that densely too.
  auto x2 = random_rvec(4096, -40.0, 1.0, 43);
  x.insert(x.end(), x2.begin(), x2.end());
  std::vector<double> out(x.size());
  vx->vexp(x.data(), out.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ref = std::exp(x[i]);
    CHECK(std::abs(out[i] - ref) <= 1e-13 * std::max(ref, 1e-300));
  }
}

TEST_CASE("vectorized sincos matches libm over the working range") {
  if (!have_avx2()) return;
  const auto* vx = kd::avx2_ops();
  auto x = random_rvec(8192, -1e5, 1e5, 44);
  auto x2 = random_rvec(8192, -10.0, 10.0, 45);
  x.insert(x.end(), x2.begin(), x2.end());
  x.push_back(0.0);
  std::vector<double> s(x.size()), c(x.size());
  vx->vsincos(x.data(), s.data(), c.data(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(s[i] - std::sin(x[i])) < 2e-13);
    CHECK(std::abs(c[i] - std::cos(x[i])) < 2e-13);
  }
}

TEST_CASE("vcis and vcis_mul_add match their scalar forms") {
  if (!have_avx2()) return;
  const auto& sc = kd::scalar_ops();
  const auto* vx = kd::avx2_ops();
  for (std::size_t n : {1u, 4u, 5u, 255u}) {
    auto amp = random_rvec(n, -2.0, 2.0, 50 + n);
    auto phase = random_rvec(n, -300.0, 300.0, 60 + n);
    auto f = random_cvec(n, 70 + n);
    std::vector<cplx> o1(n), o2(n);
    sc.vcis(amp.data(), phase.data(), o1.data(), n);
    vx->vcis(amp.data(), phase.data(), o2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(o1[i] - o2[i]) < 1e-12);

    auto a1 = f, a2 = f;
    sc.vcis_mul_add(amp.data(), phase.data(), f.data(), a1.data(), n);
    vx->vcis_mul_add(amp.data(), phase.data(), f.data(), a2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a1[i] - a2[i]) < 1e-12);
  }
}

TEST_CASE("gemv variants agree across backends") {
  if (!have_avx2()) return;
  const auto& sc = kd::scalar_ops();
  const auto* vx = kd::avx2_ops();
  const std::size_t rows = 33, cols = 47;
  auto K = random_cvec(rows * cols, 80);
  auto x = random_cvec(cols, 81);
  auto xr = random_cvec(rows, 82);
  std::vector<cplx> y1(rows), y2(rows), z1(cols), z2(cols);
  sc.gemv(K.data(), rows, cols, x.data(), y1.data());
  vx->gemv(K.data(), rows, cols, x.data(), y2.data());
  sc.gemv_conj_t(K.data(), rows, cols, xr.data(), z1.data());
  vx->gemv_conj_t(K.data(), rows, cols, xr.data(), z2.data());
  for (std::size_t i = 0; i < rows; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-12);
  for (std::size_t i = 0; i < cols; ++i) CHECK(std::abs(z1[i] - z2[i]) < 1e-12);
}

TEST_CASE("wsum matches direct accumulation") {
  if (!have_avx2()) return;
  const auto& sc = kd::scalar_ops();
  const auto* vx = kd::avx2_ops();
  const std::size_t n = 513;
  auto w = random_rvec(n, -1.0, 1.0, 90);
  auto f = random_cvec(n, 91);
  CHECK(std::abs(sc.wsum(w.data(), f.data(), n) -
                 vx->wsum(w.data(), f.data(), n)) < 1e-12);
}

TEST_CASE("backend override is honored") {
  const k::Backend before = k::active_backend();
  k::set_backend(k::Backend::scalar);
  CHECK(k::active_backend() == k::Backend::scalar);
  if (have_avx2()) {
    k::set_backend(k::Backend::avx2);
    CHECK(k::active_backend() == k::Backend::avx2);
  }
  k::set_backend(before);
}
