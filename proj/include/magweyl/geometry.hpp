#pragma once

// Magnetic fields, vector potentials, gauge functions, and the integrals
// built from them: fluxes through triangles, circulations along segments,
// the twisted symplectic form and Poisson bracket.
//
// Sign conventions used throughout the library:
//   sigma(X, Y)        = y.xi - x.eta                       (X=(x,xi), Y=(y,eta))
//   sigma_B at base x  = sigma + sum_{jk} B_jk(x) y_j z_k
//   circulation[x, y]  = int_0^1 A(x + s(y-x)) . (y-x) ds   (oriented x -> y)
//   flux<a,b,c>        = sum_{jk} (b-a)_j (c-b)_k
//                        int_0^1 int_0^1 mu B_jk(a + mu(b-a) + mu nu (c-b))
// With these choices the Stokes identity
//   circulation[a,b] + circulation[b,c] + circulation[c,a] = flux<a,b,c>
// holds for every potential with dA = B, and quantization built on the
// circulation phase is gauge covariant. This is the orientation that makes
// the two routes to the twisted product agree; see tests/test_moyal.cpp.

#include <array>
#include <string>
#include <vector>

#include "magweyl/errors.hpp"

namespace magweyl {

/// Small fixed-capacity coordinate vector; dimensions run over 1..3.
struct VecN {
  int n = 0;
  std::array<double, 3> c{0.0, 0.0, 0.0};

  VecN() = default;
  VecN(int dim) : n(dim) {}
  VecN(std::initializer_list<double> xs) {
    n = static_cast<int>(xs.size());
    int i = 0;
    for (double v : xs) c[i++] = v;
  }
  double& operator[](int i) { return c[i]; }
  double operator[](int i) const { return c[i]; }

  VecN operator+(const VecN& o) const {
    VecN r(n);
    for (int i = 0; i < n; ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  VecN operator-(const VecN& o) const {
    VecN r(n);
    for (int i = 0; i < n; ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  VecN operator*(double s) const {
    VecN r(n);
    for (int i = 0; i < n; ++i) r.c[i] = c[i] * s;
    return r;
  }
  double dot(const VecN& o) const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += c[i] * o.c[i];
    return s;
  }
  double norm2() const { return dot(*this); }
};

inline VecN operator*(double s, const VecN& v) { return v * s; }

struct PhaseSpacePoint {
  VecN x;
  VecN xi;

  PhaseSpacePoint() = default;
  PhaseSpacePoint(VecN pos, VecN mom) : x(pos), xi(mom) {
    if (x.n != xi.n) throw InputError("phase-space point with mixed dimensions");
  }
  int dim() const { return x.n; }
};

enum class FieldFamily { zero, constant, linear, bounded_smooth };

/// Closed 2-form given by antisymmetric components B_jk(x).
/// Families: zero; constant (params = upper-triangle components, e.g. {b12}
/// at N=2, {b12, b13, b23} at N=3); linear   B_12(x) = b0 + b1 x1  (N=2);
/// bounded_smooth B_12(x) = b0 / (1 + |x|^2)  (N=2).
class MagneticField {
 public:
  MagneticField() = default;
  MagneticField(int dim, FieldFamily family, std::vector<double> params);

  int dim() const { return dim_; }
  FieldFamily family() const { return family_; }
  const std::vector<double>& params() const { return params_; }
  bool is_zero() const;

  double component(int j, int k, const VecN& x) const;
  /// d/dx_l of B_jk, analytic.
  double component_derivative(int j, int k, int l, const VecN& x) const;

 private:
  int dim_ = 1;
  FieldFamily family_ = FieldFamily::zero;
  std::vector<double> params_;
};

enum class GaugeFamily { linear, quadratic, oscillatory };

/// Scalar gauge function rho with analytic gradient and Hessian.
///  linear:      rho = c . x                       params = {c_1..c_N}
///  quadratic:   rho = x^T Q x / 2 + c . x         params = {Q upper tri, c}
///  oscillatory: rho = a sin(k . x + phi)          params = {a, k_1..k_N, phi}
class GaugeFunction {
 public:
  GaugeFunction(int dim, GaugeFamily family, std::vector<double> params);

  int dim() const { return dim_; }
  GaugeFamily family() const { return family_; }
  double value(const VecN& x) const;
  VecN gradient(const VecN& x) const;
  double hessian(int j, int k, const VecN& x) const;
  /// Degree of the gradient as a polynomial, or -1 if not polynomial.
  int gradient_poly_degree() const;

 private:
  int dim_ = 1;
  GaugeFamily family_ = GaugeFamily::linear;
  std::vector<double> params_;
};

enum class GaugeKind { zero, symmetric, landau, transversal };

/// One-form A with dA = B. Built from a base gauge of a field family plus
/// any number of pure-gauge terms grad(rho).
///  symmetric (constant B):   A_k = sum_j x_j B_jk / 2
///  landau (constant B, N=2): A = (-b0 x2, 0)
///  landau (linear B, N=2):   A = (0, b0 x1 + b1 x1^2 / 2)
///  transversal (bounded_smooth, N=2):
///                            A = (b0/2) log(1+|x|^2)/|x|^2 * (-x2, x1)
class VectorPotential {
 public:
  VectorPotential() = default;
  VectorPotential(MagneticField field, GaugeKind kind);

  int dim() const { return field_.dim(); }
  const MagneticField& field() const { return field_; }
  GaugeKind kind() const { return kind_; }
  const std::vector<GaugeFunction>& gauge_terms() const { return gauge_terms_; }

  double component(int j, const VecN& x) const;
  /// d/dx_k of A_j, analytic.
  double gradient(int j, int k, const VecN& x) const;
  /// Degree of A as a polynomial in x, or -1 if not polynomial.
  int poly_degree() const;
  /// True when both potentials describe the same field through gauges that
  /// differ only by gauge terms.
  bool same_field(const VectorPotential& other) const;

  friend VectorPotential gauge_transform(const VectorPotential& a,
                                         const GaugeFunction& rho);

 private:
  MagneticField field_;
  GaugeKind kind_ = GaugeKind::zero;
  std::vector<GaugeFunction> gauge_terms_;
};

/// Flux of B through the oriented triangle <a,b,c>, tensor Gauss-Legendre of
/// the given order on the parametrized double integral. Zero at N=1.
double flux_triangle(const MagneticField& b, const VecN& a, const VecN& v2,
                     const VecN& v3, int order = 16);

/// Line integral of A along the straight segment from x to y.
double circulation_segment(const VectorPotential& a, const VecN& x,
                           const VecN& y, int order = 16);

/// A' = A + d rho; reports the same magnetic field.
VectorPotential gauge_transform(const VectorPotential& a,
                                const GaugeFunction& rho);

/// Twisted symplectic form at the given base point.
double sigma_b(const MagneticField& b, const VecN& base,
               const PhaseSpacePoint& y, const PhaseSpacePoint& z);

/// Standard symplectic form sigma(Y, Z) = z.eta - y.zeta.
double sigma(const PhaseSpacePoint& y, const PhaseSpacePoint& z);

/// Twisted Poisson bracket at X for anything exposing dfdx(j, X) / dfdxi(j, X).
template <typename F, typename G>
double poisson_bracket(const MagneticField& b, const F& f, const G& g,
                       const PhaseSpacePoint& x) {
  if (b.dim() != x.dim()) throw InputError("poisson_bracket: dimension mismatch");
  const int n = x.dim();
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    s += f.dfdxi(j, x) * g.dfdx(j, x) - g.dfdxi(j, x) * f.dfdx(j, x);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      s += b.component(j, k, x.x) * f.dfdxi(j, x) * g.dfdxi(k, x);
    }
  return s;
}

/// Declarative family record, the construction interface used by configs.
struct FamilyConfig {
  std::string family;
  std::vector<double> params;
};

MagneticField make_field(const FamilyConfig& cfg, int dim);
VectorPotential make_potential(const MagneticField& field,
                               const std::string& gauge);
GaugeFunction make_gauge_function(const FamilyConfig& cfg, int dim);

}  // namespace magweyl
