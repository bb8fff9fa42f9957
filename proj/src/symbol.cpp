#include "magweyl/symbol.hpp"

#include <cmath>
#include <numbers>

namespace magweyl {

class SymbolNode {
 public:
  virtual ~SymbolNode() = default;
  virtual int dim() const = 0;
  virtual cplx eval(const VecN& x, const VecN& xi) const = 0;
  virtual cplx dfdx(int j, const VecN& x, const VecN& xi) const {
    // central difference fallback
    VecN xp = x, xm = x;
    xp[j] += fd_step();
    xm[j] -= fd_step();
    return (eval(xp, xi) - eval(xm, xi)) / (2.0 * fd_step());
  }
  virtual cplx dfdxi(int j, const VecN& x, const VecN& xi) const {
    VecN xp = xi, xm = xi;
    xp[j] += fd_step();
    xm[j] -= fd_step();
    return (eval(x, xp) - eval(x, xm)) / (2.0 * fd_step());
  }
  virtual double fd_step() const { return 1e-5; }
  virtual bool has_partial_fourier() const { return false; }
  virtual cplx partial_fourier(const VecN&, const VecN&) const {
    throw ConfigError("symbol family has no analytic partial Fourier transform");
  }
  virtual const GaussianData* as_gaussian() const { return nullptr; }
  virtual const GridSymbolData* as_grid() const { return nullptr; }
  virtual std::optional<double> momentum_radius(double) const {
    return std::nullopt;
  }
  virtual bool collect_gaussians(cplx, std::vector<GaussianData>&) const {
    return false;
  }
};

namespace {

cplx cis(double arg) { return {std::cos(arg), std::sin(arg)}; }

class GaussianNode final : public SymbolNode {
 public:
  explicit GaussianNode(GaussianData d) : d_(std::move(d)) {
    for (int j = 0; j < d_.dim; ++j)
      if (d_.sx[j] <= 0.0 || d_.sxi[j] <= 0.0)
        throw ConfigError("gaussian symbol: widths must be positive");
  }
  int dim() const override { return d_.dim; }

  cplx eval(const VecN& x, const VecN& xi) const override {
    double expo = 0.0, arg = 0.0;
    for (int j = 0; j < d_.dim; ++j) {
      const double dx = x[j] - d_.x0[j];
      const double dxi = xi[j] - d_.xi0[j];
      expo -= dx * dx / (2.0 * d_.sx[j] * d_.sx[j]);
      expo -= dxi * dxi / (2.0 * d_.sxi[j] * d_.sxi[j]);
      arg += d_.kx[j] * x[j] + d_.kxi[j] * xi[j];
    }
    return d_.amp * std::exp(expo) * cis(arg);
  }

  cplx dfdx(int j, const VecN& x, const VecN& xi) const override {
    const cplx f = eval(x, xi);
    const double dx = x[j] - d_.x0[j];
    return f * (cplx(0.0, d_.kx[j]) - dx / (d_.sx[j] * d_.sx[j]));
  }
  cplx dfdxi(int j, const VecN& x, const VecN& xi) const override {
    const cplx f = eval(x, xi);
    const double dxi = xi[j] - d_.xi0[j];
    return f * (cplx(0.0, d_.kxi[j]) - dxi / (d_.sxi[j] * d_.sxi[j]));
  }

  bool has_partial_fourier() const override { return true; }

  // (2 pi)^{-N/2} int dxi e^{i d.xi} f(m, xi): per axis
  //   int e^{i w xi} e^{-(xi-xi0)^2/(2 s^2)} dxi = sqrt(2 pi) s e^{i w xi0 - w^2 s^2/2}
  // with w = d_j + kxi_j; prefactors cancel to prod s_j.
  cplx partial_fourier(const VecN& m, const VecN& d) const override {
    double expo = 0.0, arg = 0.0, amp = 1.0;
    for (int j = 0; j < d_.dim; ++j) {
      const double dm = m[j] - d_.x0[j];
      const double w = d[j] + d_.kxi[j];
      expo -= dm * dm / (2.0 * d_.sx[j] * d_.sx[j]);
      expo -= 0.5 * w * w * d_.sxi[j] * d_.sxi[j];
      arg += d_.kx[j] * m[j] + w * d_.xi0[j];
      amp *= d_.sxi[j];
    }
    return d_.amp * amp * std::exp(expo) * cis(arg);
  }

  const GaussianData* as_gaussian() const override { return &d_; }

  bool collect_gaussians(cplx w,
                         std::vector<GaussianData>& out) const override {
    out.push_back(d_);
    out.back().amp *= w;
    return true;
  }

  std::optional<double> momentum_radius(double tail_eps) const override {
    const double spread = std::sqrt(2.0 * std::log(1.0 / tail_eps));
    double r = 0.0;
    for (int j = 0; j < d_.dim; ++j)
      r = std::max(r, std::abs(d_.xi0[j]) + d_.sxi[j] * spread);
    return r;
  }

 private:
  GaussianData d_;
};

class PolynomialNode final : public SymbolNode {
 public:
  PolynomialNode(int dim, std::vector<Symbol::Monomial> terms)
      : dim_(dim), terms_(std::move(terms)) {}
  int dim() const override { return dim_; }

  cplx eval(const VecN& x, const VecN& xi) const override {
    cplx s(0.0, 0.0);
    for (const auto& t : terms_) {
      double v = 1.0;
      for (int j = 0; j < dim_; ++j) {
        for (int p = 0; p < t.px[j]; ++p) v *= x[j];
        for (int p = 0; p < t.pxi[j]; ++p) v *= xi[j];
      }
      s += t.coeff * v;
    }
    return s;
  }

  cplx dfdx(int j, const VecN& x, const VecN& xi) const override {
    cplx s(0.0, 0.0);
    for (const auto& t : terms_) {
      if (t.px[j] == 0) continue;
      double v = t.px[j];
      for (int a = 0; a < dim_; ++a) {
        const int px = a == j ? t.px[a] - 1 : t.px[a];
        for (int p = 0; p < px; ++p) v *= x[a];
        for (int p = 0; p < t.pxi[a]; ++p) v *= xi[a];
      }
      s += t.coeff * v;
    }
    return s;
  }
  cplx dfdxi(int j, const VecN& x, const VecN& xi) const override {
    cplx s(0.0, 0.0);
    for (const auto& t : terms_) {
      if (t.pxi[j] == 0) continue;
      double v = t.pxi[j];
      for (int a = 0; a < dim_; ++a) {
        for (int p = 0; p < t.px[a]; ++p) v *= x[a];
        const int pxi = a == j ? t.pxi[a] - 1 : t.pxi[a];
        for (int p = 0; p < pxi; ++p) v *= xi[a];
      }
      s += t.coeff * v;
    }
    return s;
  }

 private:
  int dim_;
  std::vector<Symbol::Monomial> terms_;
};

class SumNode final : public SymbolNode {
 public:
  SumNode(Symbol a, Symbol b, cplx wa, cplx wb)
      : a_(std::move(a)), b_(std::move(b)), wa_(wa), wb_(wb) {
    if (a_.dim() != b_.dim()) throw InputError("symbol sum: dimension mismatch");
  }
  int dim() const override { return a_.dim(); }
  cplx eval(const VecN& x, const VecN& xi) const override {
    return wa_ * a_.eval(x, xi) + wb_ * b_.eval(x, xi);
  }
  cplx dfdx(int j, const VecN& x, const VecN& xi) const override {
    PhaseSpacePoint p(x, xi);
    return wa_ * a_.dfdx(j, p) + wb_ * b_.dfdx(j, p);
  }
  cplx dfdxi(int j, const VecN& x, const VecN& xi) const override {
    PhaseSpacePoint p(x, xi);
    return wa_ * a_.dfdxi(j, p) + wb_ * b_.dfdxi(j, p);
  }
  bool has_partial_fourier() const override {
    return a_.has_partial_fourier() && b_.has_partial_fourier();
  }
  cplx partial_fourier(const VecN& m, const VecN& d) const override {
    return wa_ * a_.partial_fourier(m, d) + wb_ * b_.partial_fourier(m, d);
  }
  std::optional<double> momentum_radius(double eps) const override {
    auto ra = a_.momentum_radius(eps);
    auto rb = b_.momentum_radius(eps);
    if (!ra || !rb) return std::nullopt;
    return std::max(*ra, *rb);
  }
  bool collect_gaussians(cplx w,
                         std::vector<GaussianData>& out) const override {
    return a_.node().collect_gaussians(w * wa_, out) &&
           b_.node().collect_gaussians(w * wb_, out);
  }

 private:
  Symbol a_, b_;
  cplx wa_, wb_;
};

class ProductNode final : public SymbolNode {
 public:
  ProductNode(Symbol a, Symbol b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.dim() != b_.dim())
      throw InputError("symbol product: dimension mismatch");
  }
  int dim() const override { return a_.dim(); }
  cplx eval(const VecN& x, const VecN& xi) const override {
    return a_.eval(x, xi) * b_.eval(x, xi);
  }
  cplx dfdx(int j, const VecN& x, const VecN& xi) const override {
    PhaseSpacePoint p(x, xi);
    return a_.dfdx(j, p) * b_.eval(x, xi) + a_.eval(x, xi) * b_.dfdx(j, p);
  }
  cplx dfdxi(int j, const VecN& x, const VecN& xi) const override {
    PhaseSpacePoint p(x, xi);
    return a_.dfdxi(j, p) * b_.eval(x, xi) + a_.eval(x, xi) * b_.dfdxi(j, p);
  }
  std::optional<double> momentum_radius(double eps) const override {
    auto ra = a_.momentum_radius(eps);
    auto rb = b_.momentum_radius(eps);
    if (ra && rb) return std::min(*ra, *rb);
    if (ra) return ra;
    return rb;
  }

 private:
  Symbol a_, b_;
};

class ConjNode final : public SymbolNode {
 public:
  explicit ConjNode(Symbol a) : a_(std::move(a)) {}
  int dim() const override { return a_.dim(); }
  cplx eval(const VecN& x, const VecN& xi) const override {
    return std::conj(a_.eval(x, xi));
  }
  cplx dfdx(int j, const VecN& x, const VecN& xi) const override {
    return std::conj(a_.dfdx(j, PhaseSpacePoint(x, xi)));
  }
  cplx dfdxi(int j, const VecN& x, const VecN& xi) const override {
    return std::conj(a_.dfdxi(j, PhaseSpacePoint(x, xi)));
  }
  std::optional<double> momentum_radius(double eps) const override {
    return a_.momentum_radius(eps);
  }

 private:
  Symbol a_;
};

class GridNode final : public SymbolNode {
 public:
  explicit GridNode(GridSymbolData d) : d_(std::move(d)) {
    if (d_.values.size() != d_.expected_size())
      throw InputError("grid symbol: sample count does not match lattice");
  }
  int dim() const override { return d_.grid.dim(); }

  cplx eval(const VecN& x, const VecN& xi) const override {
    // nearest-lattice lookup; callers evaluate on lattice points
    const int n = d_.grid.dim();
    int u[3] = {0, 0, 0}, k[3] = {0, 0, 0};
    for (int j = 0; j < n; ++j) {
      const double uf = (x[j] + d_.grid.half_width()) / (0.5 * d_.grid.spacing());
      const double kf = xi[j] / (d_.hbar * d_.grid.momentum_spacing()) +
                        d_.grid.points_per_axis() / 4;
      u[j] = int(std::lround(uf));
      k[j] = int(std::lround(kf));
      if (u[j] < 0 || u[j] >= d_.mid_per_axis() || k[j] < 0 ||
          k[j] >= d_.mom_per_axis())
        throw InputError("grid symbol evaluated outside its lattice");
    }
    return d_.values[d_.index(u, k)];
  }

  double fd_step() const override { return 0.5 * d_.grid.spacing(); }

  const GridSymbolData* as_grid() const override { return &d_; }

  std::optional<double> momentum_radius(double) const override {
    return std::abs(d_.mom_coord(0));
  }

 private:
  GridSymbolData d_;
};

class PoissonNode final : public SymbolNode {
 public:
  PoissonNode(MagneticField b, Symbol f, Symbol g)
      : b_(std::move(b)), f_(std::move(f)), g_(std::move(g)) {
    if (f_.dim() != g_.dim() || f_.dim() != b_.dim())
      throw InputError("poisson symbol: dimension mismatch");
  }
  int dim() const override { return f_.dim(); }
  cplx eval(const VecN& x, const VecN& xi) const override {
    return poisson_bracket(b_, f_, g_, PhaseSpacePoint(x, xi));
  }
  std::optional<double> momentum_radius(double eps) const override {
    auto rf = f_.momentum_radius(eps);
    auto rg = g_.momentum_radius(eps);
    if (rf && rg) return std::max(*rf, *rg);
    return std::nullopt;
  }

 private:
  MagneticField b_;
  Symbol f_, g_;
};

}  // namespace

std::size_t GridSymbolData::expected_size() const {
  std::size_t s = 1;
  for (int j = 0; j < grid.dim(); ++j)
    s *= std::size_t(mid_per_axis()) * std::size_t(mom_per_axis());
  return s;
}

std::size_t GridSymbolData::index(const int* u, const int* k) const {
  std::size_t f = 0;
  for (int j = 0; j < grid.dim(); ++j)
    f = f * mid_per_axis() + std::size_t(u[j]);
  for (int j = 0; j < grid.dim(); ++j)
    f = f * mom_per_axis() + std::size_t(k[j]);
  return f;
}

int Symbol::dim() const { return node_->dim(); }
cplx Symbol::eval(const VecN& x, const VecN& xi) const {
  return node_->eval(x, xi);
}
cplx Symbol::dfdx(int j, const PhaseSpacePoint& p) const {
  return node_->dfdx(j, p.x, p.xi);
}
cplx Symbol::dfdxi(int j, const PhaseSpacePoint& p) const {
  return node_->dfdxi(j, p.x, p.xi);
}
bool Symbol::has_partial_fourier() const {
  return node_->has_partial_fourier();
}
cplx Symbol::partial_fourier(const VecN& m, const VecN& d) const {
  return node_->partial_fourier(m, d);
}
const GaussianData* Symbol::as_gaussian() const { return node_->as_gaussian(); }
const GridSymbolData* Symbol::as_grid() const { return node_->as_grid(); }
std::optional<std::vector<GaussianData>> Symbol::gaussian_terms() const {
  std::vector<GaussianData> out;
  if (!node_->collect_gaussians(cplx(1.0, 0.0), out)) return std::nullopt;
  return out;
}
std::optional<double> Symbol::momentum_radius(double eps) const {
  return node_->momentum_radius(eps);
}

Symbol Symbol::gaussian(const GaussianData& data) {
  return Symbol(std::make_shared<GaussianNode>(data));
}

Symbol Symbol::standard_gaussian(int dim, const PhaseSpacePoint& center,
                                 double width_x, double width_xi) {
  GaussianData d;
  d.dim = dim;
  d.x0 = center.x;
  d.xi0 = center.xi;
  d.sx = VecN(dim);
  d.sxi = VecN(dim);
  d.kx = VecN(dim);
  d.kxi = VecN(dim);
  for (int j = 0; j < dim; ++j) {
    d.sx[j] = width_x;
    d.sxi[j] = width_xi;
  }
  return gaussian(d);
}

Symbol Symbol::polynomial(int dim, std::vector<Monomial> terms) {
  return Symbol(std::make_shared<PolynomialNode>(dim, std::move(terms)));
}

Symbol Symbol::coordinate(int dim, int axis) {
  Monomial m;
  m.coeff = 1.0;
  m.px[axis] = 1;
  return polynomial(dim, {m});
}

Symbol Symbol::momentum_coordinate(int dim, int axis) {
  Monomial m;
  m.coeff = 1.0;
  m.pxi[axis] = 1;
  return polynomial(dim, {m});
}

Symbol Symbol::mollified_character(const PhaseSpacePoint& x0, double width) {
  // e_{X0}(Z) = exp(-i sigma(X0, Z)) = exp(-i (z.xi0 - x0.zeta))
  GaussianData d;
  const int n = x0.dim();
  d.dim = n;
  d.x0 = VecN(n);
  d.xi0 = VecN(n);
  d.sx = VecN(n);
  d.sxi = VecN(n);
  d.kx = VecN(n);
  d.kxi = VecN(n);
  for (int j = 0; j < n; ++j) {
    d.sx[j] = width;
    d.sxi[j] = width;
    d.kx[j] = -x0.xi[j];
    d.kxi[j] = x0.x[j];
  }
  return gaussian(d);
}

Symbol Symbol::one_mollified(int dim, double width) {
  VecN zero(dim);
  return mollified_character(PhaseSpacePoint(zero, zero), width);
}

Symbol Symbol::grid_symbol(GridSymbolData data) {
  return Symbol(std::make_shared<GridNode>(std::move(data)));
}

Symbol Symbol::poisson_bracket_symbol(const MagneticField& b, Symbol f,
                                      Symbol g) {
  return Symbol(std::make_shared<PoissonNode>(b, std::move(f), std::move(g)));
}

Symbol operator+(const Symbol& a, const Symbol& b) {
  return Symbol(std::make_shared<SumNode>(a, b, cplx(1.0), cplx(1.0)));
}
Symbol operator-(const Symbol& a, const Symbol& b) {
  return Symbol(std::make_shared<SumNode>(a, b, cplx(1.0), cplx(-1.0)));
}
Symbol operator*(const Symbol& a, const Symbol& b) {
  // fold products of two pure Gaussians back into the Gaussian family so the
  // result keeps its analytic partial Fourier transform
  const GaussianData* ga = a.as_gaussian();
  const GaussianData* gb = b.as_gaussian();
  if (ga && gb) {
    GaussianData d;
    const int n = ga->dim;
    d.dim = n;
    d.x0 = VecN(n);
    d.xi0 = VecN(n);
    d.sx = VecN(n);
    d.sxi = VecN(n);
    d.kx = VecN(n);
    d.kxi = VecN(n);
    cplx amp = ga->amp * gb->amp;
    double expo = 0.0;
    auto combine = [&](double c1, double s1, double c2, double s2, double& c,
                       double& s) {
      const double p1 = 1.0 / (s1 * s1), p2 = 1.0 / (s2 * s2);
      const double p = p1 + p2;
      c = (c1 * p1 + c2 * p2) / p;
      s = 1.0 / std::sqrt(p);
      // exp(-(t-c1)^2 p1/2) exp(-(t-c2)^2 p2/2)
      //   = exp(-(c1-c2)^2 p1 p2 / (2p)) exp(-(t-c)^2 p/2)
      expo -= (c1 - c2) * (c1 - c2) * p1 * p2 / (2.0 * p);
    };
    for (int j = 0; j < n; ++j) {
      combine(ga->x0[j], ga->sx[j], gb->x0[j], gb->sx[j], d.x0[j], d.sx[j]);
      combine(ga->xi0[j], ga->sxi[j], gb->xi0[j], gb->sxi[j], d.xi0[j],
              d.sxi[j]);
      d.kx[j] = ga->kx[j] + gb->kx[j];
      d.kxi[j] = ga->kxi[j] + gb->kxi[j];
    }
    d.amp = amp * std::exp(expo);
    return Symbol::gaussian(d);
  }
  return Symbol(std::make_shared<ProductNode>(a, b));
}
Symbol operator*(cplx scale, const Symbol& a) {
  return Symbol(std::make_shared<SumNode>(a, a, scale, cplx(0.0)));
}
Symbol conj(const Symbol& a) {
  const GaussianData* g = a.as_gaussian();
  if (g) {
    GaussianData d = *g;
    d.amp = std::conj(d.amp);
    for (int j = 0; j < d.dim; ++j) {
      d.kx[j] = -d.kx[j];
      d.kxi[j] = -d.kxi[j];
    }
    return Symbol::gaussian(d);
  }
  return Symbol(std::make_shared<ConjNode>(a));
}

cplx poisson_bracket(const MagneticField& b, const Symbol& f, const Symbol& g,
                     const PhaseSpacePoint& x) {
  if (b.dim() != x.dim() || f.dim() != x.dim() || g.dim() != x.dim())
    throw InputError("poisson_bracket: dimension mismatch");
  const int n = x.dim();
  cplx s(0.0, 0.0);
  for (int j = 0; j < n; ++j)
    s += f.dfdxi(j, x) * g.dfdx(j, x) - g.dfdxi(j, x) * f.dfdx(j, x);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      s += b.component(j, k, x.x) * f.dfdxi(j, x) * g.dfdxi(k, x);
    }
  return s;
}

double grid_symbol_distance(const GridSymbolData& a, const GridSymbolData& b) {
  if (a.values.size() != b.values.size())
    throw InputError("grid symbol distance: lattice mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

double grid_symbol_distance(const GridSymbolData& a, const Symbol& reference) {
  const int n = a.grid.dim();
  const int nu = a.mid_per_axis(), nk = a.mom_per_axis();
  double num = 0.0, den = 0.0;
  int u[3] = {0, 0, 0}, k[3] = {0, 0, 0};
  std::size_t total_u = 1, total_k = 1;
  for (int j = 0; j < n; ++j) {
    total_u *= std::size_t(nu);
    total_k *= std::size_t(nk);
  }
  for (std::size_t fu = 0; fu < total_u; ++fu) {
    std::size_t rest = fu;
    for (int j = n - 1; j >= 0; --j) {
      u[j] = int(rest % nu);
      rest /= nu;
    }
    VecN m(n);
    for (int j = 0; j < n; ++j) m[j] = a.mid_coord(u[j]);
    for (std::size_t fk = 0; fk < total_k; ++fk) {
      rest = fk;
      for (int j = n - 1; j >= 0; --j) {
        k[j] = int(rest % nk);
        rest /= nk;
      }
      VecN eta(n);
      for (int j = 0; j < n; ++j) eta[j] = a.mom_coord(k[j]);
      const cplx ref = reference.eval(m, eta);
      num += std::norm(a.values[a.index(u, k)] - ref);
      den += std::norm(ref);
    }
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace magweyl
