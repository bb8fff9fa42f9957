#pragma once

// Discretized position space. The grid covers [-L, L) per axis with M evenly
// spaced points x_i = (i - M/2) h, h = 2L/M, and the dual momentum grid
// xi_k = (k - M/2) pi/L. All states used in tests decay well inside the box,
// so the periodic wrap-around of the discrete Fourier transform stays below
// tolerance.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "magweyl/errors.hpp"
#include "magweyl/geometry.hpp"

namespace magweyl {

using cplx = std::complex<double>;

class PositionGrid {
 public:
  static constexpr std::size_t default_cap = std::size_t(1) << 16;

  PositionGrid() = default;
  PositionGrid(int dim, double half_width, int points_per_axis,
               std::size_t cap = default_cap);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int points_per_axis() const { return m_; }
  double spacing() const { return 2.0 * half_width_ / m_; }
  double momentum_spacing() const;  // pi / L
  std::size_t total() const { return total_; }
  double cell_volume() const;      // h^N
  double momentum_cell_volume() const;

  double coord(int index) const { return (index - m_ / 2) * spacing(); }
  double momentum(int index) const {
    return (index - m_ / 2) * momentum_spacing();
  }

  /// Decomposes a flat row-major index into per-axis indices.
  void unflatten(std::size_t flat, int* idx) const;
  std::size_t flatten(const int* idx) const;
  VecN point(std::size_t flat) const;
  VecN momentum_point(std::size_t flat) const;

  /// The conjugate grid: same point count, half-width (M/2) pi / L, so its
  /// coords are this grid's momentum lattice. fourier() maps between a grid
  /// and its dual.
  PositionGrid dual() const;

  bool operator==(const PositionGrid& o) const {
    return dim_ == o.dim_ && half_width_ == o.half_width_ && m_ == o.m_;
  }

 private:
  int dim_ = 1;
  double half_width_ = 1.0;
  int m_ = 4;
  std::size_t total_ = 4;
};

class WaveFunction {
 public:
  WaveFunction() = default;
  explicit WaveFunction(const PositionGrid& grid)
      : grid_(grid), values_(grid.total(), cplx(0.0, 0.0)) {}
  WaveFunction(const PositionGrid& grid, std::vector<cplx> values);

  const PositionGrid& grid() const { return grid_; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx& operator[](std::size_t i) { return values_[i]; }

  double norm() const;
  /// Scales to unit norm; throws NumericalError on the zero vector.
  void normalize();

 private:
  PositionGrid grid_;
  std::vector<cplx> values_;
};

/// h^N sum conj(u_i) v_i, antilinear in the first slot.
cplx inner_product(const WaveFunction& u, const WaveFunction& v);

enum class FourierDirection { forward, inverse };

/// Unitary centered Fourier transform with symmetric (2 pi)^{-N/2}
/// normalization; inverse(forward(u)) = u to round-off.
WaveFunction fourier(const WaveFunction& u, FourierDirection dir);

/// Band-limited translation u(x) -> u(x + shift) via phase multiplication in
/// the Fourier domain; exactly unitary, exact permutation for on-grid shifts.
WaveFunction translate(const WaveFunction& u, const VecN& shift);

/// Dense operator with the action (S u)(x_i) = h^N sum_j K(x_i, x_j) u(x_j).
class KernelOperator {
 public:
  KernelOperator() = default;
  explicit KernelOperator(const PositionGrid& grid)
      : grid_(grid), k_(grid.total() * grid.total(), cplx(0.0, 0.0)) {}
  KernelOperator(const PositionGrid& grid, std::vector<cplx> kernel);

  const PositionGrid& grid() const { return grid_; }
  std::size_t size() const { return grid_.total(); }
  const std::vector<cplx>& kernel() const { return k_; }
  std::vector<cplx>& kernel() { return k_; }
  cplx at(std::size_t row, std::size_t col) const {
    return k_[row * grid_.total() + col];
  }
  cplx& at(std::size_t row, std::size_t col) {
    return k_[row * grid_.total() + col];
  }

  KernelOperator adjoint() const;

 private:
  PositionGrid grid_;
  std::vector<cplx> k_;
};

WaveFunction apply(const KernelOperator& s, const WaveFunction& u);
WaveFunction apply_adjoint(const KernelOperator& s, const WaveFunction& u);

/// Composition S1 S2 as a kernel operator (h^N-weighted matrix product).
KernelOperator operator_product(const KernelOperator& s1,
                                const KernelOperator& s2);

KernelOperator operator_add(const KernelOperator& s1, const KernelOperator& s2,
                            cplx w1 = 1.0, cplx w2 = 1.0);

KernelOperator identity_operator(const PositionGrid& grid);
/// Rank-one |v><w|.
KernelOperator rank_one(const WaveFunction& v, const WaveFunction& w);

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iterations = 20000;
  std::uint64_t seed = 0x6d616777796c0001ull;
};

/// Largest singular value by power iteration on S*S with a deterministic
/// seeded start vector.
double operator_norm(const KernelOperator& s, double tol = 1e-10);
double operator_norm(const KernelOperator& s, const PowerIterationOptions& opt);

/// Matrix-free variant: op(u) must apply a fixed linear map; the norm of that
/// map is estimated through power iteration on op^H op using apply_h for the
/// adjoint.
double operator_norm_matfree(
    std::size_t n, const std::function<void(const cplx*, cplx*)>& op,
    const std::function<void(const cplx*, cplx*)>& op_h,
    const PowerIterationOptions& opt = {});

// Flat binary serialization: header (magic, version, kind, N, M, L) plus
// little-endian interleaved doubles, row-major.
void save_wavefunction(const std::string& path, const WaveFunction& u);
WaveFunction load_wavefunction(const std::string& path);
void save_kernel_operator(const std::string& path, const KernelOperator& s);
KernelOperator load_kernel_operator(const std::string& path);

}  // namespace magweyl
