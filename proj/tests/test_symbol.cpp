#include "magweyl/symbol.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

using namespace magweyl;

namespace {

// numerical check of the momentum-slot transform by direct quadrature
cplx pf_quadrature(const Symbol& f, const VecN& m, const VecN& d,
                   double range, int steps) {
  const int n = f.dim();
  cplx acc(0.0, 0.0);
  const double dxi = 2.0 * range / steps;
  if (n == 1) {
    for (int k = 0; k < steps; ++k) {
      const double xi = -range + (k + 0.5) * dxi;
      acc += f.eval(m, VecN{xi}) * std::exp(cplx(0.0, d[0] * xi)) * dxi;
    }
  } else {
    for (int k1 = 0; k1 < steps; ++k1)
      for (int k2 = 0; k2 < steps; ++k2) {
        VecN xi{-range + (k1 + 0.5) * dxi, -range + (k2 + 0.5) * dxi};
        acc += f.eval(m, xi) *
               std::exp(cplx(0.0, d[0] * xi[0] + d[1] * xi[1])) * dxi * dxi;
      }
  }
  return acc * std::pow(2.0 * std::numbers::pi, -0.5 * n);
}

GaussianData sample_gaussian() {
  GaussianData d;
  d.dim = 2;
  d.amp = cplx(0.8, -0.3);
  d.x0 = VecN{0.3, -0.5};
  d.xi0 = VecN{-0.2, 0.4};
  d.sx = VecN{1.1, 0.8};
  d.sxi = VecN{0.9, 1.3};
  d.kx = VecN{0.7, -0.4};
  d.kxi = VecN{0.2, 0.5};
  return d;
}

}  // namespace

TEST_CASE("gaussian partial fourier matches direct quadrature") {
  Symbol f = Symbol::gaussian(sample_gaussian());
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  for (int t = 0; t < 6; ++t) {
    VecN m{unif(rng), unif(rng)}, d{unif(rng), unif(rng)};
    const cplx analytic = f.partial_fourier(m, d);
    const cplx numeric = pf_quadrature(f, m, d, 12.0, 400);
    CHECK(std::abs(analytic - numeric) < 1e-8);
  }
}

TEST_CASE("symbol derivatives: analytic vs finite differences") {
  Symbol f = Symbol::gaussian(sample_gaussian());
  Symbol p = Symbol::polynomial(
      2, {Symbol::Monomial{cplx(1.0, 0.0), {2, 0, 0}, {0, 0, 0}},
          Symbol::Monomial{cplx(0.5, 0.0), {0, 0, 0}, {1, 1, 0}}});
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  const double eps = 1e-6;
  for (const Symbol& s : {f, p, f * p, f + p}) {
    for (int t = 0; t < 5; ++t) {
      PhaseSpacePoint x(VecN{unif(rng), unif(rng)}, VecN{unif(rng), unif(rng)});
      for (int j = 0; j < 2; ++j) {
        VecN xp = x.x, xm = x.x;
        xp[j] += eps;
        xm[j] -= eps;
        const cplx fd = (s.eval(xp, x.xi) - s.eval(xm, x.xi)) / (2.0 * eps);
        CHECK(std::abs(s.dfdx(j, x) - fd) < 1e-7);
        VecN qp = x.xi, qm = x.xi;
        qp[j] += eps;
        qm[j] -= eps;
        const cplx fdq = (s.eval(x.x, qp) - s.eval(x.x, qm)) / (2.0 * eps);
        CHECK(std::abs(s.dfdxi(j, x) - fdq) < 1e-7);
      }
    }
  }
}

TEST_CASE("product of gaussians folds into the family") {
  GaussianData a = sample_gaussian();
  GaussianData b = sample_gaussian();
  b.x0 = VecN{-0.4, 0.1};
  b.sx = VecN{0.7, 1.5};
  b.amp = cplx(0.5, 0.2);
  Symbol fa = Symbol::gaussian(a), fb = Symbol::gaussian(b);
  Symbol prod = fa * fb;
  CHECK(prod.as_gaussian() != nullptr);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int t = 0; t < 10; ++t) {
    VecN x{unif(rng), unif(rng)}, xi{unif(rng), unif(rng)};
    const cplx direct = fa.eval(x, xi) * fb.eval(x, xi);
    CHECK(std::abs(prod.eval(x, xi) - direct) < 1e-12);
  }
}

TEST_CASE("conjugation flips phases and amplitudes") {
  Symbol f = Symbol::gaussian(sample_gaussian());
  Symbol fc = conj(f);
  CHECK(fc.as_gaussian() != nullptr);
  VecN x{0.2, -0.7}, xi{1.0, 0.3};
  CHECK(std::abs(fc.eval(x, xi) - std::conj(f.eval(x, xi))) < 1e-14);
}

TEST_CASE("mollified character evaluates as a damped plane wave") {
  PhaseSpacePoint x0(VecN{0.4, -0.2}, VecN{0.9, 0.1});
  const double width = 7.0;
  Symbol e = Symbol::mollified_character(x0, width);
  VecN z{0.5, 0.8}, zeta{-0.3, 0.6};
  // e_{X0}(Z) = exp(-i (z.xi0 - x0.zeta)) times the gaussian envelope
  const double sig = z[0] * x0.xi[0] + z[1] * x0.xi[1] -
                     (x0.x[0] * zeta[0] + x0.x[1] * zeta[1]);
  const double env = std::exp(-(z.norm2() + zeta.norm2()) / (2.0 * width * width));
  const cplx expected = std::exp(cplx(0.0, -sig)) * env;
  CHECK(std::abs(e.eval(z, zeta) - expected) < 1e-13);
}

TEST_CASE("poisson bracket on symbols") {
  MagneticField b(2, FieldFamily::constant, {1.3});
  Symbol x1 = Symbol::coordinate(2, 0);
  Symbol xi1 = Symbol::momentum_coordinate(2, 0);
  Symbol xi2 = Symbol::momentum_coordinate(2, 1);
  PhaseSpacePoint p(VecN{0.4, 0.6}, VecN{-0.1, 0.2});
  CHECK(std::abs(poisson_bracket(b, x1, xi1, p) - cplx(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(poisson_bracket(b, xi1, xi2, p) - cplx(1.3, 0.0)) < 1e-12);
  // antisymmetry and the Leibniz rule on smooth symbols
  Symbol f = Symbol::standard_gaussian(2, p, 1.2, 0.9);
  Symbol g = Symbol::gaussian(sample_gaussian());
  Symbol h = x1;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int t = 0; t < 6; ++t) {
    PhaseSpacePoint q(VecN{unif(rng), unif(rng)}, VecN{unif(rng), unif(rng)});
    const cplx fg = poisson_bracket(b, f, g, q);
    const cplx gf = poisson_bracket(b, g, f, q);
    CHECK(std::abs(fg + gf) < 1e-8);
    const cplx lhs = poisson_bracket(b, f, g * h, q);
    const cplx rhs = poisson_bracket(b, f, g, q) * h.eval(q.x, q.xi) +
                     g.eval(q.x, q.xi) * poisson_bracket(b, f, h, q);
    CHECK(std::abs(lhs - rhs) < 1e-8);
  }
}

TEST_CASE("poisson bracket symbol equals pointwise bracket") {
  MagneticField b(2, FieldFamily::linear, {0.6, 0.8});
  Symbol f = Symbol::gaussian(sample_gaussian());
  Symbol g = Symbol::standard_gaussian(
      2, PhaseSpacePoint(VecN{0.1, 0.2}, VecN{0.0, -0.3}), 1.0, 1.1);
  Symbol pb = Symbol::poisson_bracket_symbol(b, f, g);
  PhaseSpacePoint q(VecN{0.3, -0.4}, VecN{0.5, 0.1});
  CHECK(std::abs(pb.eval(q.x, q.xi) - poisson_bracket(b, f, g, q)) < 1e-12);
}

TEST_CASE("momentum radius bounds the gaussian tail") {
  Symbol f = Symbol::gaussian(sample_gaussian());
  auto r = f.momentum_radius(1e-8);
  REQUIRE(r.has_value());
  // beyond the radius the momentum profile is below the tail threshold
  VecN x = sample_gaussian().x0;
  VecN xi{*r + 0.5, 0.0};
  CHECK(std::abs(f.eval(x, xi)) < 1e-7);
  Symbol p = Symbol::coordinate(2, 0);
  CHECK(!p.momentum_radius(1e-8).has_value());
}
