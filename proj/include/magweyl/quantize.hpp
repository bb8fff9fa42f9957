#pragma once

// The twisted Weyl calculus on the grid. The kernel of the quantized symbol
// is
//   K(x, y) = (2 pi hbar)^{-N} e^{-(i/hbar) circulation[x,y]}
//             * int d eta e^{(i/hbar)(x-y).eta} f((x+y)/2, eta),
// with the eta-integral evaluated analytically for Gaussian-family symbols
// and as a lattice sum for everything else. Midpoints land on the half-grid;
// the dequantizer returns samples on that half-grid paired with the parity-
// reduced momentum lattice (M/2 bins of spacing hbar pi / L), which is the
// exactly invertible pairing for even difference lines. Symbols whose
// momentum support exceeds the lattice window alias; the grid-symbol path
// raises ResolutionError for that, closed-form paths compute the aliased
// operator as-is.

#include "magweyl/geometry.hpp"
#include "magweyl/grid.hpp"
#include "magweyl/symbol.hpp"

namespace magweyl {

struct PlanckParameter {
  double hbar;
  explicit PlanckParameter(double h) : hbar(h) {
    if (!(h > 0.0) || h > 1.0)
      throw InputError("planck parameter must lie in (0, 1]");
  }
};

/// The dyadic ladder {1, 1/2, ..., 2^{-rungs+1}}.
std::vector<double> dyadic_ladder(int rungs);

/// Circulation along [x, y] with the quadrature order matched to the
/// potential family (midpoint/Simpson exact for polynomial potentials).
double circulation(const VectorPotential& a, const VecN& x, const VecN& y);

/// The twisted phase-space translation W_hbar(Y) as a dense operator:
/// multiplication phases times the exact band-limited translation by hbar*y.
KernelOperator weyl_system(const VectorPotential& a, PlanckParameter hbar,
                           const PhaseSpacePoint& y, const PositionGrid& grid);

/// Quantization of a symbol.
KernelOperator op_a(const Symbol& f, const VectorPotential& a,
                    PlanckParameter hbar, const PositionGrid& grid);

/// Inverse of op_a onto the half-grid midpoint / reduced momentum lattice.
Symbol dequantize(const KernelOperator& s, const VectorPotential& a,
                  PlanckParameter hbar);

/// The non-covariant quantization: momentum argument shifted by A at the
/// midpoint, no circulation phase.
KernelOperator wrong_op(const Symbol& f, const VectorPotential& a,
                        PlanckParameter hbar, const PositionGrid& grid);

/// -i hbar d/dx_j - A_j as a dense operator (spectral derivative).
KernelOperator magnetic_momentum(const VectorPotential& a,
                                 PlanckParameter hbar, int axis,
                                 const PositionGrid& grid);

/// Multiplication by the coordinate x_j.
KernelOperator position_operator(int axis, const PositionGrid& grid);

/// Multiplication by e^{i rho / hbar} as a dense (diagonal) operator.
KernelOperator gauge_unitary(const GaugeFunction& rho, PlanckParameter hbar,
                             const PositionGrid& grid);

/// Symplectic Fourier transform, closed form on the Gaussian family (and
/// sums of it); normalized as an involution.
Symbol symplectic_fourier(const Symbol& f);

/// <u, Op(f) v> without materializing the kernel; Gaussian-family symbols.
cplx op_matrix_element_stream(const Symbol& f, const VectorPotential& a,
                              PlanckParameter hbar, const WaveFunction& u,
                              const WaveFunction& v);

}  // namespace magweyl
