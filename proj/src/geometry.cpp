#include "magweyl/geometry.hpp"

#include <cmath>

#include "magweyl/quadrature.hpp"

namespace magweyl {

namespace {

void check_dim(int a, int b, const char* where) {
  if (a != b) throw InputError(std::string(where) + ": dimension mismatch");
}

// log(1+u)/u with the small-argument series; appears in the transversal
// gauge of the bounded_smooth family.
double log1p_over(double u) {
  if (std::abs(u) < 1e-6) return 1.0 - u / 2.0 + u * u / 3.0;
  return std::log1p(u) / u;
}

// d/du of log(1+u)/u.
double dlog1p_over(double u) {
  if (std::abs(u) < 1e-6) return -0.5 + 2.0 * u / 3.0 - 0.75 * u * u;
  return (u / (1.0 + u) - std::log1p(u)) / (u * u);
}

}  // namespace

MagneticField::MagneticField(int dim, FieldFamily family,
                             std::vector<double> params)
    : dim_(dim), family_(family), params_(std::move(params)) {
  if (dim < 1 || dim > 3) throw InputError("magnetic field: dim must be 1..3");
  if (dim == 1 && family != FieldFamily::zero)
    throw InputError("magnetic field: only the zero family exists at N=1");
  switch (family) {
    case FieldFamily::zero:
      break;
    case FieldFamily::constant: {
      const std::size_t need = dim == 2 ? 1 : 3;
      if (params_.size() != need)
        throw ConfigError("constant field: wrong parameter count");
      break;
    }
    case FieldFamily::linear:
      if (dim != 2) throw ConfigError("linear field family requires N=2");
      if (params_.size() != 2)
        throw ConfigError("linear field: expected params {b0, b1}");
      break;
    case FieldFamily::bounded_smooth:
      if (dim != 2) throw ConfigError("bounded_smooth field family requires N=2");
      if (params_.size() != 1)
        throw ConfigError("bounded_smooth field: expected params {b0}");
      break;
  }
}

bool MagneticField::is_zero() const {
  if (family_ == FieldFamily::zero) return true;
  for (double p : params_)
    if (p != 0.0) return false;
  return true;
}

double MagneticField::component(int j, int k, const VecN& x) const {
  if (j == k) return 0.0;
  if (j > k) return -component(k, j, x);
  // j < k from here on
  switch (family_) {
    case FieldFamily::zero:
      return 0.0;
    case FieldFamily::constant:
      if (dim_ == 2) return params_[0];
      // order: B_01, B_02, B_12
      if (j == 0 && k == 1) return params_[0];
      if (j == 0 && k == 2) return params_[1];
      return params_[2];
    case FieldFamily::linear:
      return (j == 0 && k == 1) ? params_[0] + params_[1] * x[0] : 0.0;
    case FieldFamily::bounded_smooth:
      return (j == 0 && k == 1) ? params_[0] / (1.0 + x.norm2()) : 0.0;
  }
  return 0.0;
}

double MagneticField::component_derivative(int j, int k, int l,
                                           const VecN& x) const {
  if (j == k) return 0.0;
  if (j > k) return -component_derivative(k, j, l, x);
  switch (family_) {
    case FieldFamily::zero:
    case FieldFamily::constant:
      return 0.0;
    case FieldFamily::linear:
      return (j == 0 && k == 1 && l == 0) ? params_[1] : 0.0;
    case FieldFamily::bounded_smooth: {
      if (!(j == 0 && k == 1)) return 0.0;
      const double d = 1.0 + x.norm2();
      return -params_[0] * 2.0 * x[l] / (d * d);
    }
  }
  return 0.0;
}

GaugeFunction::GaugeFunction(int dim, GaugeFamily family,
                             std::vector<double> params)
    : dim_(dim), family_(family), params_(std::move(params)) {
  const std::size_t n = static_cast<std::size_t>(dim);
  switch (family) {
    case GaugeFamily::linear:
      if (params_.size() != n)
        throw ConfigError("linear gauge: expected N coefficients");
      break;
    case GaugeFamily::quadratic:
      if (params_.size() != n * (n + 1) / 2 + n)
        throw ConfigError("quadratic gauge: expected upper-triangle(Q) + c");
      break;
    case GaugeFamily::oscillatory:
      if (params_.size() != n + 2)
        throw ConfigError("oscillatory gauge: expected {a, k_1..k_N, phi}");
      break;
  }
}

namespace {
// Upper-triangle packing for the symmetric quadratic form.
inline int tri_index(int j, int k, int n) {
  if (j > k) std::swap(j, k);
  return j * n - j * (j - 1) / 2 + (k - j);
}
}  // namespace

double GaugeFunction::value(const VecN& x) const {
  switch (family_) {
    case GaugeFamily::linear: {
      double s = 0.0;
      for (int j = 0; j < dim_; ++j) s += params_[j] * x[j];
      return s;
    }
    case GaugeFamily::quadratic: {
      const int nq = dim_ * (dim_ + 1) / 2;
      double s = 0.0;
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          s += 0.5 * params_[tri_index(j, k, dim_)] * x[j] * x[k];
      for (int j = 0; j < dim_; ++j) s += params_[nq + j] * x[j];
      return s;
    }
    case GaugeFamily::oscillatory: {
      double arg = params_[dim_ + 1];
      for (int j = 0; j < dim_; ++j) arg += params_[1 + j] * x[j];
      return params_[0] * std::sin(arg);
    }
  }
  return 0.0;
}

VecN GaugeFunction::gradient(const VecN& x) const {
  VecN g(dim_);
  switch (family_) {
    case GaugeFamily::linear:
      for (int j = 0; j < dim_; ++j) g[j] = params_[j];
      break;
    case GaugeFamily::quadratic: {
      const int nq = dim_ * (dim_ + 1) / 2;
      for (int j = 0; j < dim_; ++j) {
        double s = params_[nq + j];
        for (int k = 0; k < dim_; ++k)
          s += params_[tri_index(j, k, dim_)] * x[k];
        g[j] = s;
      }
      break;
    }
    case GaugeFamily::oscillatory: {
      double arg = params_[dim_ + 1];
      for (int j = 0; j < dim_; ++j) arg += params_[1 + j] * x[j];
      const double da = params_[0] * std::cos(arg);
      for (int j = 0; j < dim_; ++j) g[j] = da * params_[1 + j];
      break;
    }
  }
  return g;
}

double GaugeFunction::hessian(int j, int k, const VecN& x) const {
  switch (family_) {
    case GaugeFamily::linear:
      return 0.0;
    case GaugeFamily::quadratic:
      return params_[tri_index(j, k, dim_)];
    case GaugeFamily::oscillatory: {
      double arg = params_[dim_ + 1];
      for (int l = 0; l < dim_; ++l) arg += params_[1 + l] * x[l];
      return -params_[0] * std::sin(arg) * params_[1 + j] * params_[1 + k];
    }
  }
  return 0.0;
}

int GaugeFunction::gradient_poly_degree() const {
  switch (family_) {
    case GaugeFamily::linear:
      return 0;
    case GaugeFamily::quadratic:
      return 1;
    case GaugeFamily::oscillatory:
      return -1;
  }
  return -1;
}

VectorPotential::VectorPotential(MagneticField field, GaugeKind kind)
    : field_(std::move(field)), kind_(kind) {
  const FieldFamily fam = field_.family();
  switch (kind) {
    case GaugeKind::zero:
      if (fam != FieldFamily::zero)
        throw ConfigError("zero gauge only matches the zero field");
      break;
    case GaugeKind::symmetric:
      if (fam != FieldFamily::zero && fam != FieldFamily::constant)
        throw ConfigError("symmetric gauge needs a constant field");
      break;
    case GaugeKind::landau:
      if (field_.dim() != 2 ||
          (fam != FieldFamily::constant && fam != FieldFamily::linear &&
           fam != FieldFamily::zero))
        throw ConfigError("landau gauge needs constant or linear field at N=2");
      break;
    case GaugeKind::transversal:
      if (fam != FieldFamily::bounded_smooth)
        throw ConfigError("transversal gauge implemented for bounded_smooth");
      break;
  }
}

double VectorPotential::component(int j, const VecN& x) const {
  check_dim(x.n, dim(), "vector potential");
  double a = 0.0;
  switch (kind_) {
    case GaugeKind::zero:
      break;
    case GaugeKind::symmetric:
      for (int k = 0; k < dim(); ++k)
        a += 0.5 * x[k] * field_.component(k, j, x);
      break;
    case GaugeKind::landau:
      if (field_.family() == FieldFamily::constant) {
        if (j == 0) a = -field_.params()[0] * x[1];
      } else if (field_.family() == FieldFamily::linear) {
        if (j == 1)
          a = field_.params()[0] * x[0] + 0.5 * field_.params()[1] * x[0] * x[0];
      }
      break;
    case GaugeKind::transversal: {
      const double g = 0.5 * field_.params()[0] * log1p_over(x.norm2());
      a = (j == 0) ? -x[1] * g : x[0] * g;
      break;
    }
  }
  for (const auto& rho : gauge_terms_) a += rho.gradient(x)[j];
  return a;
}

double VectorPotential::gradient(int j, int k, const VecN& x) const {
  check_dim(x.n, dim(), "vector potential");
  double g = 0.0;
  switch (kind_) {
    case GaugeKind::zero:
      break;
    case GaugeKind::symmetric:
      // A_j = sum_l x_l B_lj / 2 with constant B
      g = 0.5 * field_.component(k, j, x);
      break;
    case GaugeKind::landau:
      if (field_.family() == FieldFamily::constant) {
        if (j == 0 && k == 1) g = -field_.params()[0];
      } else if (field_.family() == FieldFamily::linear) {
        if (j == 1 && k == 0)
          g = field_.params()[0] + field_.params()[1] * x[0];
      }
      break;
    case GaugeKind::transversal: {
      const double u = x.norm2();
      const double b0 = field_.params()[0];
      const double gv = 0.5 * b0 * log1p_over(u);
      const double dg = 0.5 * b0 * dlog1p_over(u);  // d/du
      const double eps_j = (j == 0) ? -x[1] : x[0];
      const double deps = (j == 0) ? (k == 1 ? -1.0 : 0.0)
                                   : (k == 0 ? 1.0 : 0.0);
      g = deps * gv + eps_j * dg * 2.0 * x[k];
      break;
    }
  }
  for (const auto& rho : gauge_terms_) g += rho.hessian(j, k, x);
  return g;
}

int VectorPotential::poly_degree() const {
  int deg = 0;
  switch (kind_) {
    case GaugeKind::zero:
      deg = 0;
      break;
    case GaugeKind::symmetric:
      deg = 1;
      break;
    case GaugeKind::landau:
      deg = field_.family() == FieldFamily::linear ? 2 : 1;
      break;
    case GaugeKind::transversal:
      return -1;
  }
  for (const auto& rho : gauge_terms_) {
    int d = rho.gradient_poly_degree();
    if (d < 0) return -1;
    deg = std::max(deg, d);
  }
  return deg;
}

bool VectorPotential::same_field(const VectorPotential& other) const {
  return dim() == other.dim() && field_.family() == other.field_.family() &&
         field_.params() == other.field_.params();
}

VectorPotential gauge_transform(const VectorPotential& a,
                                const GaugeFunction& rho) {
  check_dim(a.dim(), rho.dim(), "gauge_transform");
  VectorPotential out = a;
  out.gauge_terms_.push_back(rho);
  return out;
}

double flux_triangle(const MagneticField& b, const VecN& a, const VecN& v2,
                     const VecN& v3, int order) {
  check_dim(b.dim(), a.n, "flux_triangle");
  check_dim(a.n, v2.n, "flux_triangle");
  check_dim(a.n, v3.n, "flux_triangle");
  if (order < 2) throw InputError("flux_triangle: order must be >= 2");
  const int n = a.n;
  if (n < 2) return 0.0;
  if (b.is_zero()) return 0.0;

  const VecN e1 = v2 - a;      // b - a
  const VecN e2 = v3 - v2;     // c - b
  const auto& rule = gauss_legendre_01(order);

  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const double coeff = e1[j] * e2[k];
      if (coeff == 0.0) continue;
      double integral = 0.0;
      for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
        const double mu = rule.nodes[p];
        VecN base = a + mu * e1;
        double inner = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double nu = rule.nodes[q];
          inner += rule.weights[q] * b.component(j, k, base + (mu * nu) * e2);
        }
        integral += rule.weights[p] * mu * inner;
      }
      total += coeff * integral;
    }
  }
  return total;
}

double circulation_segment(const VectorPotential& a, const VecN& x,
                           const VecN& y, int order) {
  check_dim(a.dim(), x.n, "circulation_segment");
  check_dim(x.n, y.n, "circulation_segment");
  if (order < 2) throw InputError("circulation_segment: order must be >= 2");
  const VecN d = y - x;
  if (d.norm2() == 0.0) return 0.0;
  const int deg = a.poly_degree();
  // polynomial integrand of degree deg: GL of order (deg+2)/2 is exact
  const int eff = (deg >= 0) ? std::min(order, deg / 2 + 1) : order;
  const auto& rule = gauss_legendre_01(std::max(2, eff));
  double s = 0.0;
  for (std::size_t p = 0; p < rule.nodes.size(); ++p) {
    const VecN pt = x + rule.nodes[p] * d;
    double ad = 0.0;
    for (int j = 0; j < x.n; ++j) ad += a.component(j, pt) * d[j];
    s += rule.weights[p] * ad;
  }
  return s;
}

double sigma(const PhaseSpacePoint& y, const PhaseSpacePoint& z) {
  check_dim(y.dim(), z.dim(), "sigma");
  return z.x.dot(y.xi) - y.x.dot(z.xi);
}

double sigma_b(const MagneticField& b, const VecN& base,
               const PhaseSpacePoint& y, const PhaseSpacePoint& z) {
  check_dim(b.dim(), base.n, "sigma_b");
  check_dim(base.n, y.dim(), "sigma_b");
  check_dim(y.dim(), z.dim(), "sigma_b");
  double s = sigma(y, z);
  for (int j = 0; j < base.n; ++j)
    for (int k = 0; k < base.n; ++k) {
      if (j == k) continue;
      s += b.component(j, k, base) * y.x[j] * z.x[k];
    }
  return s;
}

MagneticField make_field(const FamilyConfig& cfg, int dim) {
  FieldFamily fam;
  if (cfg.family == "zero")
    fam = FieldFamily::zero;
  else if (cfg.family == "constant")
    fam = FieldFamily::constant;
  else if (cfg.family == "linear")
    fam = FieldFamily::linear;
  else if (cfg.family == "bounded_smooth")
    fam = FieldFamily::bounded_smooth;
  else
    throw ConfigError("unknown field family: " + cfg.family);
  return MagneticField(dim, fam, cfg.params);
}

VectorPotential make_potential(const MagneticField& field,
                               const std::string& gauge) {
  GaugeKind kind;
  if (gauge == "zero")
    kind = GaugeKind::zero;
  else if (gauge == "symmetric")
    kind = GaugeKind::symmetric;
  else if (gauge == "landau")
    kind = GaugeKind::landau;
  else if (gauge == "transversal")
    kind = GaugeKind::transversal;
  else
    throw ConfigError("unknown gauge: " + gauge);
  return VectorPotential(field, kind);
}

GaugeFunction make_gauge_function(const FamilyConfig& cfg, int dim) {
  GaugeFamily fam;
  if (cfg.family == "linear")
    fam = GaugeFamily::linear;
  else if (cfg.family == "quadratic")
    fam = GaugeFamily::quadratic;
  else if (cfg.family == "oscillatory")
    fam = GaugeFamily::oscillatory;
  else
    throw ConfigError("unknown gauge function family: " + cfg.family);
  return GaugeFunction(dim, fam, cfg.params);
}

}  // namespace magweyl
