#include "magweyl/grid.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "magweyl/spectrum.hpp"
#include "doctest.h"

using namespace magweyl;

namespace {

WaveFunction gaussian_state(const PositionGrid& g, const VecN& center,
                            double width = 1.0) {
  WaveFunction u(g);
  const double norm_c = std::pow(std::numbers::pi * width * width,
                                 -0.25 * g.dim());
  for (std::size_t i = 0; i < g.total(); ++i) {
    VecN x = g.point(i);
    u[i] = norm_c * std::exp(-(x - center).norm2() / (2.0 * width * width));
  }
  return u;
}

WaveFunction random_state(const PositionGrid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  WaveFunction u(g);
  for (std::size_t i = 0; i < g.total(); ++i)
    u[i] = cplx(unif(rng), unif(rng));
  return u;
}

}  // namespace

TEST_CASE("grid construction rules") {
  CHECK_THROWS_AS(PositionGrid(1, 8.0, 5), ConfigError);
  CHECK_THROWS_AS(PositionGrid(1, 8.0, 2), ConfigError);
  CHECK_THROWS_AS(PositionGrid(2, 8.0, 512), ConfigError);  // over cap
  PositionGrid g(2, 8.0, 64);
  CHECK(g.total() == 4096);
  CHECK(g.spacing() == doctest::Approx(0.25));
  CHECK(g.coord(32) == doctest::Approx(0.0));
  CHECK(g.momentum(32) == doctest::Approx(0.0));
  // non power-of-two even sizes are allowed
  PositionGrid g48(2, 6.0, 48);
  CHECK(g48.total() == 2304);
}

TEST_CASE("normalized states have unit inner product") {
  PositionGrid g(1, 8.0, 256);
  WaveFunction u = gaussian_state(g, VecN{0.0});
  u.normalize();
  CHECK(std::abs(inner_product(u, u) - cplx(1.0, 0.0)) < 1e-12);
}

TEST_CASE("disjointly supported states are orthogonal") {
  PositionGrid g(1, 8.0, 256);
  WaveFunction u(g), v(g);
  for (std::size_t i = 0; i < g.total() / 2; ++i) u[i] = 1.0;
  for (std::size_t i = g.total() / 2; i < g.total(); ++i) v[i] = 1.0;
  CHECK(std::abs(inner_product(u, v)) == 0.0);
}

TEST_CASE("gaussian overlap matches the analytic value") {
  PositionGrid g(1, 8.0, 256);
  for (double d : {0.5, 1.0, 2.0}) {
    WaveFunction u = gaussian_state(g, VecN{0.0});
    WaveFunction v = gaussian_state(g, VecN{d});
    u.normalize();
    v.normalize();
    CHECK(std::abs(inner_product(u, v) - std::exp(-d * d / 4.0)) < 1e-6);
  }
}

TEST_CASE("identity kernel acts as identity") {
  PositionGrid g(1, 6.0, 64);
  KernelOperator id = identity_operator(g);
  WaveFunction u = random_state(g, 1);
  WaveFunction v = apply(id, u);
  for (std::size_t i = 0; i < g.total(); ++i)
    CHECK(std::abs(u[i] - v[i]) < 1e-12);
}

TEST_CASE("rank-one kernel acts as projection") {
  PositionGrid g(1, 6.0, 64);
  WaveFunction v = gaussian_state(g, VecN{0.5});
  WaveFunction w = gaussian_state(g, VecN{-0.5});
  v.normalize();
  w.normalize();
  KernelOperator p = rank_one(v, w);
  WaveFunction u = random_state(g, 2);
  WaveFunction pu = apply(p, u);
  const cplx c = inner_product(w, u);
  for (std::size_t i = 0; i < g.total(); ++i)
    CHECK(std::abs(pu[i] - c * v[i]) < 1e-10);
}

TEST_CASE("multiplication kernel is pointwise") {
  PositionGrid g(1, 6.0, 64);
  KernelOperator mult(g);
  const double invh = 1.0 / g.cell_volume();
  for (std::size_t i = 0; i < g.total(); ++i)
    mult.at(i, i) = g.point(i)[0] * invh;
  WaveFunction u = gaussian_state(g, VecN{0.0});
  WaveFunction v = apply(mult, u);
  for (std::size_t i = 0; i < g.total(); ++i)
    CHECK(std::abs(v[i] - g.point(i)[0] * u[i]) < 1e-11);
}

TEST_CASE("operator norm: identity and rank-one") {
  PositionGrid g(1, 6.0, 64);
  CHECK(operator_norm(identity_operator(g), 1e-12) == doctest::Approx(1.0));
  WaveFunction v = gaussian_state(g, VecN{0.4});
  WaveFunction w = gaussian_state(g, VecN{-0.3}, 1.3);
  const double expected = v.norm() * w.norm();
  CHECK(operator_norm(rank_one(v, w), 1e-12) ==
        doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("operator norm matches dense SVD on a random kernel") {
  PositionGrid g(1, 4.0, 64);
  KernelOperator s(g);
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (auto& e : s.kernel()) e = cplx(unif(rng), unif(rng));
  const auto sv = singular_values(s);
  CHECK(operator_norm(s, 1e-12) == doctest::Approx(sv.front()).epsilon(1e-8));
  CHECK(operator_norm(s.adjoint(), 1e-12) ==
        doctest::Approx(sv.front()).epsilon(1e-8));
}

TEST_CASE("apply is bounded by the operator norm") {
  PositionGrid g(1, 4.0, 32);
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    KernelOperator s(g);
    for (auto& e : s.kernel()) e = cplx(unif(rng), unif(rng));
    const double ns = operator_norm(s, 1e-10);
    WaveFunction u = random_state(g, 100 + trial);
    CHECK(apply(s, u).norm() <= ns * u.norm() + 1e-10);
  }
}

TEST_CASE("adjoint is an involution and shares the norm") {
  PositionGrid g(1, 4.0, 32);
  KernelOperator s(g);
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (auto& e : s.kernel()) e = cplx(unif(rng), unif(rng));
  KernelOperator ss = s.adjoint().adjoint();
  for (std::size_t i = 0; i < s.kernel().size(); ++i)
    CHECK(s.kernel()[i] == ss.kernel()[i]);
}

TEST_CASE("fourier transform round-trips") {
  for (int m : {64, 48, 256}) {
    PositionGrid g(1, 8.0, m);
    WaveFunction u = random_state(g, 200 + m);
    WaveFunction v =
        fourier(fourier(u, FourierDirection::forward), FourierDirection::inverse);
    for (std::size_t i = 0; i < g.total(); ++i)
      CHECK(std::abs(u[i] - v[i]) < 1e-12);
  }
}

TEST_CASE("standard gaussian is a fixed point of the transform") {
  PositionGrid g(1, 8.0, 256);
  WaveFunction u = gaussian_state(g, VecN{0.0});
  WaveFunction f = fourier(u, FourierDirection::forward);
  // same functional form on the dual lattice
  WaveFunction expected = gaussian_state(f.grid(), VecN{0.0});
  for (std::size_t i = 0; i < g.total(); ++i)
    CHECK(std::abs(f[i] - expected[i]) < 1e-8);
}

TEST_CASE("shift theorem: translation becomes linear phase") {
  PositionGrid g(1, 8.0, 256);
  const double a = 0.7;
  WaveFunction u = gaussian_state(g, VecN{0.0}, 0.6);
  WaveFunction ua = gaussian_state(g, VecN{a}, 0.6);
  WaveFunction fu = fourier(u, FourierDirection::forward);
  WaveFunction fua = fourier(ua, FourierDirection::forward);
  for (std::size_t i = 0; i < g.total(); ++i) {
    const double xi = fu.grid().coord(int(i));
    const cplx expected = std::exp(cplx(0.0, -a * xi)) * fu[i];
    CHECK(std::abs(fua[i] - expected) < 1e-8);
  }
}

TEST_CASE("parseval identity on random pairs") {
  PositionGrid g(2, 5.0, 16);
  WaveFunction u = random_state(g, 301);
  WaveFunction v = random_state(g, 302);
  const cplx lhs = inner_product(fourier(u, FourierDirection::forward),
                                 fourier(v, FourierDirection::forward));
  const cplx rhs = inner_product(u, v);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("translation: on-grid shifts permute, all shifts preserve norm") {
  PositionGrid g(1, 8.0, 128);
  WaveFunction u = gaussian_state(g, VecN{0.0}, 0.8);
  u.normalize();
  // on-grid shift
  WaveFunction t1 = translate(u, VecN{2.0 * g.spacing()});
  for (std::size_t i = 0; i + 2 < g.total(); ++i)
    CHECK(std::abs(t1[i] - u[i + 2]) < 1e-11);
  // off-grid shift stays unitary and matches the analytic gaussian
  const double a = 0.33 * g.spacing();
  WaveFunction t2 = translate(u, VecN{a});
  CHECK(t2.norm() == doctest::Approx(1.0).epsilon(1e-12));
  WaveFunction expected = gaussian_state(g, VecN{-a}, 0.8);
  expected.normalize();
  for (std::size_t i = 0; i < g.total(); ++i)
    CHECK(std::abs(t2[i] - expected[i]) < 1e-9);
}

TEST_CASE("binary fixtures round-trip") {
  PositionGrid g(2, 4.0, 8);
  WaveFunction u = random_state(g, 400);
  const std::string path = "/tmp/magweyl_test_wave.bin";
  save_wavefunction(path, u);
  WaveFunction v = load_wavefunction(path);
  CHECK(v.grid() == u.grid());
  for (std::size_t i = 0; i < g.total(); ++i) CHECK(u[i] == v[i]);

  KernelOperator s(g);
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (auto& e : s.kernel()) e = cplx(unif(rng), unif(rng));
  const std::string kpath = "/tmp/magweyl_test_kernel.bin";
  save_kernel_operator(kpath, s);
  KernelOperator s2 = load_kernel_operator(kpath);
  CHECK(s2.kernel() == s.kernel());
  std::remove(path.c_str());
  std::remove(kpath.c_str());
}

TEST_CASE("grid mismatch raises input errors") {
  PositionGrid g1(1, 8.0, 64), g2(1, 8.0, 128);
  WaveFunction u(g1), v(g2);
  CHECK_THROWS_AS(inner_product(u, v), InputError);
  KernelOperator s(g1);
  CHECK_THROWS_AS(apply(s, v), InputError);
}
