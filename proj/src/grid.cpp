#include "magweyl/grid.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>

#include "magweyl/fft.hpp"
#include "magweyl/kernels.hpp"
#include "magweyl/threading.hpp"

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

namespace magweyl {

PositionGrid::PositionGrid(int dim, double half_width, int points_per_axis,
                           std::size_t cap)
    : dim_(dim), half_width_(half_width), m_(points_per_axis) {
  if (dim < 1 || dim > 3) throw ConfigError("grid: dim must be 1..3");
  if (half_width <= 0.0) throw ConfigError("grid: half width must be positive");
  if (m_ < 4 || m_ % 2 != 0)
    throw ConfigError("grid: points per axis must be even and >= 4");
  total_ = 1;
  for (int d = 0; d < dim_; ++d) total_ *= static_cast<std::size_t>(m_);
  if (total_ > cap)
    throw ConfigError("grid: total point count " + std::to_string(total_) +
                      " exceeds cap " + std::to_string(cap));
}

double PositionGrid::momentum_spacing() const {
  return std::numbers::pi / half_width_;
}

double PositionGrid::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= spacing();
  return v;
}

double PositionGrid::momentum_cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= momentum_spacing();
  return v;
}

void PositionGrid::unflatten(std::size_t flat, int* idx) const {
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % m_);
    flat /= m_;
  }
}

std::size_t PositionGrid::flatten(const int* idx) const {
  std::size_t f = 0;
  for (int d = 0; d < dim_; ++d) f = f * m_ + static_cast<std::size_t>(idx[d]);
  return f;
}

VecN PositionGrid::point(std::size_t flat) const {
  int idx[3];
  unflatten(flat, idx);
  VecN p(dim_);
  for (int d = 0; d < dim_; ++d) p[d] = coord(idx[d]);
  return p;
}

VecN PositionGrid::momentum_point(std::size_t flat) const {
  int idx[3];
  unflatten(flat, idx);
  VecN p(dim_);
  for (int d = 0; d < dim_; ++d) p[d] = momentum(idx[d]);
  return p;
}

PositionGrid PositionGrid::dual() const {
  return PositionGrid(dim_, momentum_spacing() * (m_ / 2), m_);
}

WaveFunction::WaveFunction(const PositionGrid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.total())
    throw InputError("wavefunction: value count does not match grid");
}

double WaveFunction::norm() const {
  return std::sqrt(grid_.cell_volume() *
                   kernels::nrm2sq(values_.data(), values_.size()));
}

void WaveFunction::normalize() {
  const double n = norm();
  if (n < 1e-290) throw NumericalError("normalize: zero vector");
  kernels::scal(1.0 / n, values_.data(), values_.size());
}

cplx inner_product(const WaveFunction& u, const WaveFunction& v) {
  if (!(u.grid() == v.grid())) throw InputError("inner_product: grid mismatch");
  return u.grid().cell_volume() *
         kernels::dotc(u.values().data(), v.values().data(), u.values().size());
}

namespace {

// Multiplies by (-1)^{i1+...+iN}, the centering twiddle of the symmetric DFT.
void apply_parity_signs(std::vector<cplx>& a, const PositionGrid& g) {
  int idx[3];
  for (std::size_t f = 0; f < a.size(); ++f) {
    g.unflatten(f, idx);
    int s = 0;
    for (int d = 0; d < g.dim(); ++d) s += idx[d];
    if (s & 1) a[f] = -a[f];
  }
}

// e^{-i pi M/2} per axis; +1 for M % 4 == 0, -1 for M % 4 == 2.
double centering_constant(const PositionGrid& g) {
  double c = 1.0;
  for (int d = 0; d < g.dim(); ++d)
    if (g.points_per_axis() % 4 != 0) c = -c;
  return c;
}

}  // namespace

WaveFunction fourier(const WaveFunction& u, FourierDirection dir) {
  const PositionGrid& g = u.grid();
  WaveFunction out(g.dual(), u.values());
  auto& a = out.values();
  apply_parity_signs(a, g);
  std::vector<int> dims(g.dim(), g.points_per_axis());
  fft::dft(a.data(), dims, dir == FourierDirection::forward ? -1 : +1);
  apply_parity_signs(a, g);
  // Unitary normalization: (2 pi)^{-N/2} times the input cell volume, the
  // same formula in both directions since the inverse integrates over the
  // dual lattice.
  const double scale = std::pow(2.0 * std::numbers::pi, -0.5 * g.dim()) *
                       centering_constant(g) * g.cell_volume();
  kernels::scal(scale, a.data(), a.size());
  return out;
}

WaveFunction translate(const WaveFunction& u, const VecN& shift) {
  const PositionGrid& g = u.grid();
  if (shift.n != g.dim()) throw InputError("translate: dimension mismatch");
  WaveFunction f = fourier(u, FourierDirection::forward);
  const PositionGrid& gd = f.grid();
  auto& a = f.values();
  int idx[3];
  for (std::size_t k = 0; k < a.size(); ++k) {
    gd.unflatten(k, idx);
    double arg = 0.0;
    for (int d = 0; d < g.dim(); ++d) arg += shift[d] * gd.coord(idx[d]);
    a[k] *= cplx(std::cos(arg), std::sin(arg));
  }
  WaveFunction back = fourier(f, FourierDirection::inverse);
  // reattach the exact original grid (dual-of-dual can differ in the last ulp)
  return WaveFunction(g, std::move(back.values()));
}

KernelOperator::KernelOperator(const PositionGrid& grid,
                               std::vector<cplx> kernel)
    : grid_(grid), k_(std::move(kernel)) {
  if (k_.size() != grid_.total() * grid_.total())
    throw InputError("kernel operator: kernel size does not match grid");
}

KernelOperator KernelOperator::adjoint() const {
  KernelOperator out(grid_);
  const std::size_t n = grid_.total();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      out.k_[c * n + r] = std::conj(k_[r * n + c]);
  return out;
}

WaveFunction apply(const KernelOperator& s, const WaveFunction& u) {
  if (!(s.grid() == u.grid())) throw InputError("apply: grid mismatch");
  const std::size_t n = s.size();
  WaveFunction out(s.grid());
  const cplx* K = s.kernel().data();
  const cplx* x = u.values().data();
  cplx* y = out.values().data();
  if (thread_count() > 1 && n >= 64) {
    const std::size_t chunk = 32;
    const std::size_t blocks = (n + chunk - 1) / chunk;
    parallel_for(0, blocks, [&](std::size_t b) {
      const std::size_t r0 = b * chunk;
      const std::size_t rows = std::min(chunk, n - r0);
      kernels::gemv(K + r0 * n, rows, n, x, y + r0);
    });
  } else {
    kernels::gemv(K, n, n, x, y);
  }
  const double hN = s.grid().cell_volume();
  kernels::scal(hN, y, n);
  return out;
}

WaveFunction apply_adjoint(const KernelOperator& s, const WaveFunction& u) {
  if (!(s.grid() == u.grid())) throw InputError("apply: grid mismatch");
  const std::size_t n = s.size();
  WaveFunction out(s.grid());
  kernels::gemv_conj_t(s.kernel().data(), n, n, u.values().data(),
                       out.values().data());
  kernels::scal(s.grid().cell_volume(), out.values().data(), n);
  return out;
}

KernelOperator operator_add(const KernelOperator& s1, const KernelOperator& s2,
                            cplx w1, cplx w2) {
  if (!(s1.grid() == s2.grid()))
    throw InputError("operator_add: grid mismatch");
  KernelOperator out(s1.grid());
  auto& k = out.kernel();
  const auto& a = s1.kernel();
  const auto& b = s2.kernel();
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = w1 * a[i] + w2 * b[i];
  return out;
}

KernelOperator identity_operator(const PositionGrid& grid) {
  KernelOperator out(grid);
  const double inv = 1.0 / grid.cell_volume();
  for (std::size_t i = 0; i < grid.total(); ++i) out.at(i, i) = inv;
  return out;
}

KernelOperator rank_one(const WaveFunction& v, const WaveFunction& w) {
  if (!(v.grid() == w.grid())) throw InputError("rank_one: grid mismatch");
  KernelOperator out(v.grid());
  const std::size_t n = v.grid().total();
  for (std::size_t r = 0; r < n; ++r) {
    const cplx vr = v[r];
    for (std::size_t c = 0; c < n; ++c)
      out.at(r, c) = vr * std::conj(w[c]);
  }
  return out;
}

double operator_norm(const KernelOperator& s, double tol) {
  PowerIterationOptions opt;
  opt.tol = tol;
  return operator_norm(s, opt);
}

double operator_norm(const KernelOperator& s, const PowerIterationOptions& opt) {
  const std::size_t n = s.size();
  const double hN = s.grid().cell_volume();
  const cplx* K = s.kernel().data();
  std::vector<cplx> tmp(n);
  auto fwd = [&](const cplx* x, cplx* y) {
    kernels::gemv(K, n, n, x, y);
    kernels::scal(hN, y, n);
  };
  auto adj = [&](const cplx* x, cplx* y) {
    kernels::gemv_conj_t(K, n, n, x, y);
    kernels::scal(hN, y, n);
  };
  return operator_norm_matfree(n, fwd, adj, opt);
}

double operator_norm_matfree(
    std::size_t n, const std::function<void(const cplx*, cplx*)>& op,
    const std::function<void(const cplx*, cplx*)>& op_h,
    const PowerIterationOptions& opt) {
  if (opt.tol <= 0.0) throw InputError("operator_norm: tol must be positive");
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> v(n), w(n), z(n);
  for (auto& c : v) c = cplx(unif(rng), unif(rng));
  double vn = std::sqrt(kernels::nrm2sq(v.data(), n));
  kernels::scal(1.0 / vn, v.data(), n);

  double sigma = 0.0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    op(v.data(), w.data());
    op_h(w.data(), z.data());
    // Rayleigh quotient of S*S on the unit vector v
    const double lam = std::real(kernels::dotc(v.data(), z.data(), n));
    const double s = std::sqrt(std::max(0.0, lam));
    const double zn = std::sqrt(kernels::nrm2sq(z.data(), n));
    if (zn < 1e-290) return 0.0;  // S*S v vanished: zero operator on v-cycle
    kernels::scal(1.0 / zn, z.data(), n);
    std::swap(v, z);
    if (it > 0 && std::abs(s - sigma) <= opt.tol * std::max(s, 1e-300)) {
      return s;
    }
    sigma = s;
  }
  throw NumericalError(
      "operator_norm: power iteration did not converge after " +
      std::to_string(opt.max_iterations) +
      " iterations (last estimate " + std::to_string(sigma) + ")");
}

namespace {

struct BinHeader {
  std::uint32_t magic;
  std::uint32_t version;
  std::uint32_t kind;  // 1 = wavefunction, 2 = kernel
  std::uint32_t dim;
  std::uint32_t m;
  std::uint32_t pad;
  double half_width;
};
constexpr std::uint32_t kMagic = 0x4657424du;  // "MBWF"

void write_file(const std::string& path, const BinHeader& h, const cplx* data,
                std::size_t count) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("cannot open for writing: " + path);
  std::fwrite(&h, sizeof(h), 1, f);
  std::fwrite(data, sizeof(cplx), count, f);
  std::fclose(f);
}

BinHeader read_header(std::FILE* f, const std::string& path) {
  BinHeader h;
  if (std::fread(&h, sizeof(h), 1, f) != 1 || h.magic != kMagic ||
      h.version != 1) {
    std::fclose(f);
    throw ConfigError("bad fixture file: " + path);
  }
  return h;
}

}  // namespace

void save_wavefunction(const std::string& path, const WaveFunction& u) {
  BinHeader h{kMagic, 1, 1, std::uint32_t(u.grid().dim()),
              std::uint32_t(u.grid().points_per_axis()), 0,
              u.grid().half_width()};
  write_file(path, h, u.values().data(), u.values().size());
}

WaveFunction load_wavefunction(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw ConfigError("cannot open: " + path);
  BinHeader h = read_header(f, path);
  PositionGrid g(int(h.dim), h.half_width, int(h.m));
  std::vector<cplx> vals(g.total());
  if (std::fread(vals.data(), sizeof(cplx), vals.size(), f) != vals.size()) {
    std::fclose(f);
    throw ConfigError("truncated fixture file: " + path);
  }
  std::fclose(f);
  return WaveFunction(g, std::move(vals));
}

void save_kernel_operator(const std::string& path, const KernelOperator& s) {
  BinHeader h{kMagic, 1, 2, std::uint32_t(s.grid().dim()),
              std::uint32_t(s.grid().points_per_axis()), 0,
              s.grid().half_width()};
  write_file(path, h, s.kernel().data(), s.kernel().size());
}

KernelOperator load_kernel_operator(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw ConfigError("cannot open: " + path);
  BinHeader h = read_header(f, path);
  PositionGrid g(int(h.dim), h.half_width, int(h.m));
  std::vector<cplx> vals(g.total() * g.total());
  if (std::fread(vals.data(), sizeof(cplx), vals.size(), f) != vals.size()) {
    std::fclose(f);
    throw ConfigError("truncated fixture file: " + path);
  }
  std::fclose(f);
  return KernelOperator(g, std::move(vals));
}

}  // namespace magweyl
