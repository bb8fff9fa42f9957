#include "magweyl/quantize.hpp"

#include <cmath>
#include <numbers>

#include "magweyl/fft.hpp"
#include "magweyl/kernels.hpp"
#include "magweyl/quadrature.hpp"
#include "magweyl/threading.hpp"

namespace magweyl {

namespace {

constexpr double kPi = std::numbers::pi;

cplx cis(double arg) { return {std::cos(arg), std::sin(arg)}; }

// Largest kernel we are willing to materialize (entries).
constexpr std::size_t kDenseEntryCap = std::size_t(1) << 26;

void check_dense(const PositionGrid& grid) {
  const std::size_t n = grid.total();
  if (n * n > kDenseEntryCap)
    throw ConfigError("dense kernel would exceed the entry cap; grid of " +
                      std::to_string(n) + " points is too large");
}

}  // namespace

std::vector<double> dyadic_ladder(int rungs) {
  std::vector<double> ladder(rungs);
  double h = 1.0;
  for (int i = 0; i < rungs; ++i, h *= 0.5) ladder[i] = h;
  return ladder;
}

// ---------------------------------------------------------------------------
// circulation fast paths

double circulation(const VectorPotential& a, const VecN& x, const VecN& y) {
  const int deg = a.poly_degree();
  const int n = x.n;
  const VecN d = y - x;
  if (deg >= 0 && deg <= 1) {
    // midpoint rule, exact for affine A
    double s = 0.0;
    const VecN m = 0.5 * (x + y);
    for (int j = 0; j < n; ++j) s += a.component(j, m) * d[j];
    return s;
  }
  if (deg == 2) {
    // Simpson, exact for quadratic A
    double s = 0.0;
    const VecN m = 0.5 * (x + y);
    for (int j = 0; j < n; ++j)
      s += (a.component(j, x) + 4.0 * a.component(j, m) + a.component(j, y)) *
           d[j] / 6.0;
    return s;
  }
  return circulation_segment(a, x, y, 16);
}

// ---------------------------------------------------------------------------
// Weyl system

namespace {

// (1/M) sum_k e^{i xi_k delta} with xi_k = (k - M/2) dxi: the band-limited
// translation coefficient. theta = dxi * delta.
cplx dirichlet_coeff(int m, double theta) {
  const double two_pi = 2.0 * kPi;
  const double mm = std::round(theta / two_pi);
  const double tr = theta - two_pi * mm;
  // M even: no sign from the 2 pi m reduction
  if (std::abs(tr) < 1e-12) return cis(-0.5 * tr);
  const double ratio = std::sin(0.5 * m * tr) / std::sin(0.5 * tr);
  return cis(-0.5 * tr) * (ratio / m);
}

}  // namespace

KernelOperator weyl_system(const VectorPotential& a, PlanckParameter hbar,
                           const PhaseSpacePoint& y, const PositionGrid& grid) {
  if (a.dim() != grid.dim() || y.dim() != grid.dim())
    throw InputError("weyl_system: dimension mismatch");
  check_dense(grid);
  const int n = grid.dim();
  const int m = grid.points_per_axis();
  const double hb = hbar.hbar;
  const double inv_hn = 1.0 / grid.cell_volume();

  // per-axis translation coefficients T(i_a, j_a)
  std::vector<std::vector<cplx>> tcoeff(n);
  for (int a_ = 0; a_ < n; ++a_) {
    tcoeff[a_].resize(std::size_t(m) * m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double delta = grid.coord(i) - grid.coord(j) + hb * y.x[a_];
        tcoeff[a_][std::size_t(i) * m + j] =
            dirichlet_coeff(m, grid.momentum_spacing() * delta);
      }
  }

  KernelOperator out(grid);
  const std::size_t total = grid.total();
  parallel_for(0, total, [&](std::size_t row) {
    int ridx[3];
    grid.unflatten(row, ridx);
    const VecN x = grid.point(row);
    double arg = 0.0;
    VecN xs = x;
    for (int a_ = 0; a_ < n; ++a_) {
      arg -= (x[a_] + 0.5 * hb * y.x[a_]) * y.xi[a_];
      xs[a_] = x[a_] + hb * y.x[a_];
    }
    arg -= circulation(a, x, xs) / hb;
    const cplx rowphase = cis(arg) * inv_hn;
    cplx* krow = out.kernel().data() + row * total;
    int cidx[3];
    for (std::size_t col = 0; col < total; ++col) {
      grid.unflatten(col, cidx);
      cplx t = rowphase;
      for (int a_ = 0; a_ < n; ++a_)
        t *= tcoeff[a_][std::size_t(ridx[a_]) * m + cidx[a_]];
      krow[col] = t;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// op_a

namespace {

// Fast assembly for weighted sums of Gaussian-family symbols. Writes one
// kernel row: out[j] = prefactor * gamma(x_i, x_j) * sum_t pf_t(m, d/hbar).
struct GaussianAssembler {
  const PositionGrid& grid;
  const VectorPotential& pot;
  double hbar;
  bool midpoint_shift;  // wrong_op variant: +A(m).d/hbar phase, no circulation
  std::vector<GaussianData> terms;
  double prefactor;

  GaussianAssembler(const PositionGrid& g, const VectorPotential& a, double hb,
                    bool wrong, std::vector<GaussianData> t)
      : grid(g), pot(a), hbar(hb), midpoint_shift(wrong),
        terms(std::move(t)) {
    prefactor = std::pow(2.0 * kPi * hbar, -g.dim()) *
                std::pow(2.0 * kPi, 0.5 * g.dim());
  }

  // scratch per call site (not thread-shared)
  struct Scratch {
    std::vector<double> expo, phase, amp, gauge;
    std::vector<cplx> acc, tmp;
  };

  void assemble_row(std::size_t row, Scratch& s, cplx* out) const {
    const int n = grid.dim();
    const std::size_t total = grid.total();
    s.expo.resize(total);
    s.phase.resize(total);
    s.amp.resize(total);
    s.gauge.resize(total);
    s.tmp.resize(total);
    const VecN x = grid.point(row);

    // gauge phase, common to all terms
    for (std::size_t j = 0; j < total; ++j) {
      const VecN y = grid.point(j);
      if (midpoint_shift) {
        const VecN mid = 0.5 * (x + y);
        double p = 0.0;
        for (int a_ = 0; a_ < n; ++a_)
          p += (x[a_] - y[a_]) * pot.component(a_, mid);
        s.gauge[j] = p / hbar;
      } else {
        s.gauge[j] = -circulation(pot, x, grid.point(j)) / hbar;
      }
    }

    std::fill(out, out + total, cplx(0.0, 0.0));
    for (const auto& t : terms) {
      double sxi_prod = 1.0;
      for (int a_ = 0; a_ < n; ++a_) sxi_prod *= t.sxi[a_];
      const double base_amp = std::abs(t.amp) * sxi_prod * prefactor;
      const double amp_arg = std::arg(t.amp);
      for (std::size_t j = 0; j < total; ++j) {
        const VecN y = grid.point(j);
        double expo = 0.0, ph = amp_arg + s.gauge[j];
        for (int a_ = 0; a_ < n; ++a_) {
          const double mid = 0.5 * (x[a_] + y[a_]);
          const double w = (x[a_] - y[a_]) / hbar + t.kxi[a_];
          const double dm = mid - t.x0[a_];
          expo -= dm * dm / (2.0 * t.sx[a_] * t.sx[a_]);
          expo -= 0.5 * w * w * t.sxi[a_] * t.sxi[a_];
          ph += t.kx[a_] * mid + w * t.xi0[a_];
        }
        s.expo[j] = expo;
        s.phase[j] = ph;
      }
      kernels::vexp(s.expo.data(), s.amp.data(), total);
      for (std::size_t j = 0; j < total; ++j) s.amp[j] *= base_amp;
      kernels::vcis(s.amp.data(), s.phase.data(), s.tmp.data(), total);
      kernels::axpy(cplx(1.0, 0.0), s.tmp.data(), out, total);
    }
  }
};

// Iterates midpoint multi-indices u in [0, 2M-2]^N; for each, calls
// line(u_idx) which owns the anti-diagonal { (i, u - i) }.
template <typename F>
void for_each_midpoint_line(const PositionGrid& grid, F&& line) {
  const int n = grid.dim();
  const int nu = 2 * grid.points_per_axis() - 1;
  std::size_t count = 1;
  for (int a = 0; a < n; ++a) count *= std::size_t(nu);
  for (std::size_t f = 0; f < count; ++f) {
    int u[3] = {0, 0, 0};
    std::size_t rest = f;
    for (int a = n - 1; a >= 0; --a) {
      u[a] = int(rest % nu);
      rest /= nu;
    }
    line(u);
  }
}

// op_a for symbols without an analytic momentum transform: sample on the
// full momentum lattice and run one inverse DFT per midpoint line.
KernelOperator op_a_sampled(const Symbol& f, const VectorPotential& a,
                            double hbar, const PositionGrid& grid) {
  const int n = grid.dim();
  const int m = grid.points_per_axis();
  KernelOperator out(grid);
  const double coeff = std::pow(2.0 * kPi * hbar, -n) *
                       std::pow(hbar * grid.momentum_spacing(), n);
  std::vector<int> dims(n, m);
  std::size_t ktotal = 1;
  for (int a_ = 0; a_ < n; ++a_) ktotal *= std::size_t(m);
  std::vector<cplx> buf(ktotal);

  for_each_midpoint_line(grid, [&](const int* u) {
    VecN mid(n);
    int sign_u = 1;
    for (int a_ = 0; a_ < n; ++a_) {
      mid[a_] = -grid.half_width() + 0.5 * grid.spacing() * u[a_];
      if (u[a_] & 1) sign_u = -sign_u;
    }
    // sample f(mid, hbar xi_k) over the momentum lattice
    int kidx[3];
    for (std::size_t kf = 0; kf < ktotal; ++kf) {
      std::size_t rest = kf;
      for (int a_ = n - 1; a_ >= 0; --a_) {
        kidx[a_] = int(rest % m);
        rest /= m;
      }
      VecN eta(n);
      for (int a_ = 0; a_ < n; ++a_) eta[a_] = hbar * grid.momentum(kidx[a_]);
      buf[kf] = f.eval(mid, eta);
    }
    fft::dft(buf.data(), dims, +1);

    // scatter to the kernel anti-diagonal
    int lo[3], hi[3];
    for (int a_ = 0; a_ < n; ++a_) {
      lo[a_] = std::max(0, u[a_] - m + 1);
      hi[a_] = std::min(m - 1, u[a_]);
      if (lo[a_] > hi[a_]) return;
    }
    int i[3] = {lo[0], lo[1], lo[2]};
    for (;;) {
      std::size_t rowf = 0, colf = 0, pf = 0;
      for (int a_ = 0; a_ < n; ++a_) {
        rowf = rowf * m + std::size_t(i[a_]);
        colf = colf * m + std::size_t(u[a_] - i[a_]);
        int p = (2 * i[a_] - u[a_]) % m;
        if (p < 0) p += m;
        pf = pf * m + std::size_t(p);
      }
      const VecN x = grid.point(rowf);
      const VecN y = grid.point(colf);
      const double gamma = -circulation(a, x, y) / hbar;
      out.kernel()[rowf * grid.total() + colf] =
          coeff * double(sign_u) * cis(gamma) * buf[pf];
      // advance the multi-index
      int a_ = n - 1;
      for (; a_ >= 0; --a_) {
        if (++i[a_] <= hi[a_]) break;
        i[a_] = lo[a_];
      }
      if (a_ < 0) break;
    }
  });
  return out;
}

// op_a for grid symbols living on the reduced-momentum lattice.
KernelOperator op_a_grid(const GridSymbolData& gs, const VectorPotential& a,
                         double hbar, const PositionGrid& grid) {
  if (!(gs.grid == grid))
    throw InputError("grid symbol quantized on a different grid");
  if (gs.hbar != hbar) {
    if (hbar < gs.hbar) {
      const int min_m =
          int(std::ceil(grid.points_per_axis() * gs.hbar / hbar));
      throw ResolutionError(
          "grid symbol momentum lattice under-resolves (x-y)/hbar; "
          "need at least " + std::to_string(min_m) + " points per axis",
          min_m);
    }
    throw InputError("grid symbol quantized at a different hbar");
  }
  const int n = grid.dim();
  const int m = grid.points_per_axis();
  const int mh = m / 2;
  KernelOperator out(grid);
  const double coeff = std::pow(2.0 * kPi * hbar, -n) *
                       std::pow(hbar * grid.momentum_spacing(), n);
  std::vector<int> dims(n, mh);
  std::size_t ktotal = 1;
  for (int a_ = 0; a_ < n; ++a_) ktotal *= std::size_t(mh);
  std::vector<cplx> buf(ktotal);

  for_each_midpoint_line(grid, [&](const int* u) {
    // gather the line and apply the midpoint twiddle
    int kidx[3];
    for (std::size_t kf = 0; kf < ktotal; ++kf) {
      std::size_t rest = kf;
      double tw = 0.0;
      for (int a_ = n - 1; a_ >= 0; --a_) {
        kidx[a_] = int(rest % mh);
        rest /= mh;
      }
      for (int a_ = 0; a_ < n; ++a_)
        tw -= 2.0 * kPi * u[a_] * (kidx[a_] - m / 4) / double(m);
      buf[kf] = cis(tw) * gs.values[gs.index(u, kidx)];
    }
    fft::dft(buf.data(), dims, +1);

    int lo[3], hi[3];
    for (int a_ = 0; a_ < n; ++a_) {
      lo[a_] = std::max(0, u[a_] - m + 1);
      hi[a_] = std::min(m - 1, u[a_]);
      if (lo[a_] > hi[a_]) return;
    }
    int i[3] = {lo[0], lo[1], lo[2]};
    for (;;) {
      std::size_t rowf = 0, colf = 0, qf = 0;
      int sign = 1;
      for (int a_ = 0; a_ < n; ++a_) {
        rowf = rowf * m + std::size_t(i[a_]);
        colf = colf * m + std::size_t(u[a_] - i[a_]);
        qf = qf * mh + std::size_t(i[a_] % mh);
        if (i[a_] & 1) sign = -sign;
      }
      const VecN x = grid.point(rowf);
      const VecN y = grid.point(colf);
      const double gamma = -circulation(a, x, y) / hbar;
      out.kernel()[rowf * grid.total() + colf] =
          coeff * double(sign) * cis(gamma) * buf[qf];
      int a_ = n - 1;
      for (; a_ >= 0; --a_) {
        if (++i[a_] <= hi[a_]) break;
        i[a_] = lo[a_];
      }
      if (a_ < 0) break;
    }
  });
  return out;
}

}  // namespace

KernelOperator op_a(const Symbol& f, const VectorPotential& a,
                    PlanckParameter hbar, const PositionGrid& grid) {
  if (f.dim() != grid.dim() || a.dim() != grid.dim())
    throw InputError("op_a: dimension mismatch");
  check_dense(grid);

  if (const GridSymbolData* gs = f.as_grid())
    return op_a_grid(*gs, a, hbar.hbar, grid);

  if (auto terms = f.gaussian_terms()) {
    GaussianAssembler asem(grid, a, hbar.hbar, false, std::move(*terms));
    KernelOperator out(grid);
    const std::size_t total = grid.total();
    parallel_for(0, total, [&](std::size_t row) {
      static thread_local GaussianAssembler::Scratch scratch;
      asem.assemble_row(row, scratch, out.kernel().data() + row * total);
    });
    return out;
  }

  if (f.has_partial_fourier()) {
    // generic analytic path, entry by entry
    KernelOperator out(grid);
    const std::size_t total = grid.total();
    const double pref = std::pow(2.0 * kPi * hbar.hbar, -grid.dim()) *
                        std::pow(2.0 * kPi, 0.5 * grid.dim());
    parallel_for(0, total, [&](std::size_t row) {
      const VecN x = grid.point(row);
      for (std::size_t col = 0; col < total; ++col) {
        const VecN y = grid.point(col);
        VecN mid = 0.5 * (x + y);
        VecN dd = (x - y) * (1.0 / hbar.hbar);
        const double gamma = -circulation(a, x, y) / hbar.hbar;
        out.kernel()[row * total + col] =
            pref * cis(gamma) * f.partial_fourier(mid, dd);
      }
    });
    return out;
  }

  return op_a_sampled(f, a, hbar.hbar, grid);
}

Symbol dequantize(const KernelOperator& s, const VectorPotential& a,
                  PlanckParameter hbar) {
  const PositionGrid& grid = s.grid();
  if (a.dim() != grid.dim()) throw InputError("dequantize: dimension mismatch");
  const int n = grid.dim();
  const int m = grid.points_per_axis();
  if (m % 4 != 0)
    throw ConfigError(
        "dequantize: points per axis must be divisible by 4 so the midpoint "
        "parity classes close");
  const int mh = m / 2;

  GridSymbolData gs;
  gs.grid = grid;
  gs.hbar = hbar.hbar;
  gs.values.assign(gs.expected_size(), cplx(0.0, 0.0));

  const double measure = std::pow(2.0 * grid.spacing(), n);
  std::vector<int> dims(n, mh);
  std::size_t ktotal = 1;
  for (int a_ = 0; a_ < n; ++a_) ktotal *= std::size_t(mh);
  std::vector<cplx> acc(ktotal);

  for_each_midpoint_line(grid, [&](const int* u) {
    std::fill(acc.begin(), acc.end(), cplx(0.0, 0.0));
    int lo[3], hi[3];
    for (int a_ = 0; a_ < n; ++a_) {
      lo[a_] = std::max(0, u[a_] - m + 1);
      hi[a_] = std::min(m - 1, u[a_]);
      if (lo[a_] > hi[a_]) return;
    }
    int i[3] = {lo[0], lo[1], lo[2]};
    for (;;) {
      std::size_t rowf = 0, colf = 0, qf = 0;
      int sign = 1;
      for (int a_ = 0; a_ < n; ++a_) {
        rowf = rowf * m + std::size_t(i[a_]);
        colf = colf * m + std::size_t(u[a_] - i[a_]);
        qf = qf * mh + std::size_t(i[a_] % mh);
        if (i[a_] & 1) sign = -sign;
      }
      const VecN x = grid.point(rowf);
      const VecN y = grid.point(colf);
      const double gamma = circulation(a, x, y) / hbar.hbar;
      acc[qf] += double(sign) * cis(gamma) *
                 s.kernel()[rowf * grid.total() + colf];
      int a_ = n - 1;
      for (; a_ >= 0; --a_) {
        if (++i[a_] <= hi[a_]) break;
        i[a_] = lo[a_];
      }
      if (a_ < 0) break;
    }
    fft::dft(acc.data(), dims, -1);
    int kidx[3];
    for (std::size_t kf = 0; kf < ktotal; ++kf) {
      std::size_t rest = kf;
      double tw = 0.0;
      for (int a_ = n - 1; a_ >= 0; --a_) {
        kidx[a_] = int(rest % mh);
        rest /= mh;
      }
      for (int a_ = 0; a_ < n; ++a_)
        tw += 2.0 * kPi * u[a_] * (kidx[a_] - m / 4) / double(m);
      gs.values[gs.index(u, kidx)] = measure * cis(tw) * acc[kf];
    }
  });
  return Symbol::grid_symbol(std::move(gs));
}

KernelOperator wrong_op(const Symbol& f, const VectorPotential& a,
                        PlanckParameter hbar, const PositionGrid& grid) {
  if (f.dim() != grid.dim() || a.dim() != grid.dim())
    throw InputError("wrong_op: dimension mismatch");
  check_dense(grid);
  auto terms = f.gaussian_terms();
  if (!terms)
    throw ConfigError("wrong_op: implemented for Gaussian-family symbols");
  GaussianAssembler asem(grid, a, hbar.hbar, true, std::move(*terms));
  KernelOperator out(grid);
  const std::size_t total = grid.total();
  parallel_for(0, total, [&](std::size_t row) {
    static thread_local GaussianAssembler::Scratch scratch;
    asem.assemble_row(row, scratch, out.kernel().data() + row * total);
  });
  return out;
}

KernelOperator magnetic_momentum(const VectorPotential& a,
                                 PlanckParameter hbar, int axis,
                                 const PositionGrid& grid) {
  if (a.dim() != grid.dim()) throw InputError("magnetic_momentum: dimension");
  if (axis < 0 || axis >= grid.dim())
    throw InputError("magnetic_momentum: axis out of range");
  check_dense(grid);
  const int n = grid.dim();
  const int m = grid.points_per_axis();

  // spectral derivative coefficients D(p) = (1/M) sum_k i xi_k e^{i xi_k p h}
  std::vector<cplx> dcoef(m);
  for (int p = 0; p < m; ++p) {
    cplx s(0.0, 0.0);
    for (int k = 0; k < m; ++k) {
      const double xk = grid.momentum(k);
      s += cplx(0.0, xk) * cis(xk * p * grid.spacing());
    }
    dcoef[p] = s / double(m);
  }

  KernelOperator out(grid);
  const std::size_t total = grid.total();
  const double inv_hn = 1.0 / grid.cell_volume();
  parallel_for(0, total, [&](std::size_t row) {
    int ridx[3], cidx[3];
    grid.unflatten(row, ridx);
    const VecN x = grid.point(row);
    cplx* krow = out.kernel().data() + row * total;
    for (std::size_t col = 0; col < total; ++col) {
      grid.unflatten(col, cidx);
      bool other_equal = true;
      for (int a_ = 0; a_ < n; ++a_)
        if (a_ != axis && ridx[a_] != cidx[a_]) other_equal = false;
      cplx val(0.0, 0.0);
      if (other_equal) {
        int p = (ridx[axis] - cidx[axis]) % m;
        if (p < 0) p += m;
        val = cplx(0.0, -hbar.hbar) * dcoef[p] * inv_hn;
        if (row == col) val -= a.component(axis, x) * inv_hn;
      }
      krow[col] = val;
    }
  });
  return out;
}

KernelOperator position_operator(int axis, const PositionGrid& grid) {
  check_dense(grid);
  KernelOperator out(grid);
  const double inv_hn = 1.0 / grid.cell_volume();
  for (std::size_t i = 0; i < grid.total(); ++i)
    out.at(i, i) = grid.point(i)[axis] * inv_hn;
  return out;
}

KernelOperator gauge_unitary(const GaugeFunction& rho, PlanckParameter hbar,
                             const PositionGrid& grid) {
  if (rho.dim() != grid.dim()) throw InputError("gauge_unitary: dimension");
  check_dense(grid);
  KernelOperator out(grid);
  const double inv_hn = 1.0 / grid.cell_volume();
  for (std::size_t i = 0; i < grid.total(); ++i)
    out.at(i, i) = cis(rho.value(grid.point(i)) / hbar.hbar) * inv_hn;
  return out;
}

Symbol symplectic_fourier(const Symbol& f) {
  const GaussianData* g = f.as_gaussian();
  if (!g)
    throw ConfigError(
        "symplectic_fourier: closed form available for Gaussian-family "
        "symbols only");
  GaussianData r;
  const int n = g->dim;
  r.dim = n;
  r.x0 = VecN(n);
  r.xi0 = VecN(n);
  r.sx = VecN(n);
  r.sxi = VecN(n);
  r.kx = VecN(n);
  r.kxi = VecN(n);
  double amp_scale = 1.0, amp_arg = 0.0;
  for (int j = 0; j < n; ++j) {
    r.x0[j] = g->kxi[j];
    r.xi0[j] = -g->kx[j];
    r.sx[j] = 1.0 / g->sxi[j];
    r.sxi[j] = 1.0 / g->sx[j];
    r.kx[j] = -g->xi0[j];
    r.kxi[j] = g->x0[j];
    amp_scale *= g->sx[j] * g->sxi[j];
    amp_arg += g->kx[j] * g->x0[j] + g->kxi[j] * g->xi0[j];
  }
  r.amp = g->amp * amp_scale * cis(amp_arg);
  return Symbol::gaussian(r);
}

cplx op_matrix_element_stream(const Symbol& f, const VectorPotential& a,
                              PlanckParameter hbar, const WaveFunction& u,
                              const WaveFunction& v) {
  const PositionGrid& grid = u.grid();
  if (!(grid == v.grid())) throw InputError("matrix element: grid mismatch");
  if (f.dim() != grid.dim() || a.dim() != grid.dim())
    throw InputError("matrix element: dimension mismatch");
  auto terms = f.gaussian_terms();
  if (!terms)
    throw ConfigError(
        "op_matrix_element_stream: Gaussian-family symbols only");
  GaussianAssembler asem(grid, a, hbar.hbar, false, std::move(*terms));
  const std::size_t total = grid.total();
  const int workers = thread_count();
  const double h2n = grid.cell_volume() * grid.cell_volume();

  if (workers <= 1) {
    GaussianAssembler::Scratch scratch;
    std::vector<cplx> rowbuf(total);
    cplx acc(0.0, 0.0);
    for (std::size_t row = 0; row < total; ++row) {
      asem.assemble_row(row, scratch, rowbuf.data());
      acc += std::conj(u[row]) *
             kernels::dotu(rowbuf.data(), v.values().data(), total);
    }
    return h2n * acc;
  }

  // fixed-size blocks accumulated independently, summed in index order
  const std::size_t block = 64;
  const std::size_t nblocks = (total + block - 1) / block;
  std::vector<cplx> partial(nblocks, cplx(0.0, 0.0));
  parallel_for(0, nblocks, [&](std::size_t b) {
    static thread_local GaussianAssembler::Scratch scratch;
    static thread_local std::vector<cplx> rowbuf;
    rowbuf.resize(total);
    cplx acc(0.0, 0.0);
    const std::size_t r0 = b * block;
    const std::size_t r1 = std::min(total, r0 + block);
    for (std::size_t row = r0; row < r1; ++row) {
      asem.assemble_row(row, scratch, rowbuf.data());
      acc += std::conj(u[row]) *
             kernels::dotu(rowbuf.data(), v.values().data(), total);
    }
    partial[b] = acc;
  });
  cplx acc(0.0, 0.0);
  for (const cplx& p : partial) acc += p;
  return h2n * acc;
}

}  // namespace magweyl
