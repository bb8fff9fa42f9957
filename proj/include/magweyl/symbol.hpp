#pragma once

// Phase-space functions f(x, xi). Closed-form families (Gaussians with
// optional linear phases, polynomials, pointwise sums/products) plus grid
// samples produced by dequantization. Gaussian-family symbols carry an
// analytic partial Fourier transform in the momentum slot,
//   (F2 f)(m, d) = (2 pi)^{-N/2} int dxi e^{i d.xi} f(m, xi),
// which is what the quantizer consumes; everything else is quantized from
// pointwise samples.

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "magweyl/geometry.hpp"
#include "magweyl/grid.hpp"

namespace magweyl {

/// Axis-diagonal Gaussian with linear phase:
/// f = amp * exp(i(kx.x + kxi.xi)) * prod_j exp(-(x_j-x0_j)^2/(2 sx_j^2))
///                                 * prod_j exp(-(xi_j-xi0_j)^2/(2 sxi_j^2))
struct GaussianData {
  int dim = 1;
  cplx amp{1.0, 0.0};
  VecN x0, xi0;    // centers
  VecN sx, sxi;    // widths, all positive
  VecN kx, kxi;    // linear phase
};

/// Samples on the midpoint/momentum lattice attached to a quantization grid:
/// midpoints m_u = -L + u h/2 (2M per axis), momenta eta_k = hbar (k - M/4) dxi
/// (M/2 per axis). This is the native lattice of dequantize().
struct GridSymbolData {
  PositionGrid grid;
  double hbar = 1.0;
  std::vector<cplx> values;  // row-major: midpoint axes, then momentum axes

  int mid_per_axis() const { return 2 * grid.points_per_axis(); }
  int mom_per_axis() const { return grid.points_per_axis() / 2; }
  double mid_coord(int u) const {
    return -grid.half_width() + 0.5 * grid.spacing() * u;
  }
  double mom_coord(int k) const {
    return hbar * (k - grid.points_per_axis() / 4) * grid.momentum_spacing();
  }
  std::size_t expected_size() const;
  std::size_t index(const int* u, const int* k) const;
};

class SymbolNode;

/// Value-semantic handle to an immutable symbol expression tree.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::shared_ptr<const SymbolNode> node)
      : node_(std::move(node)) {}

  bool valid() const { return node_ != nullptr; }
  int dim() const;
  cplx eval(const VecN& x, const VecN& xi) const;
  cplx eval(const PhaseSpacePoint& p) const { return eval(p.x, p.xi); }
  cplx dfdx(int j, const PhaseSpacePoint& p) const;
  cplx dfdxi(int j, const PhaseSpacePoint& p) const;

  bool has_partial_fourier() const;
  cplx partial_fourier(const VecN& m, const VecN& d) const;

  /// Non-null when this symbol is a single Gaussian-family term.
  const GaussianData* as_gaussian() const;
  const GridSymbolData* as_grid() const;
  /// All Gaussian terms when the symbol is a weighted sum of the family;
  /// nullopt otherwise.
  std::optional<std::vector<GaussianData>> gaussian_terms() const;

  /// Half-width of the momentum support (tail mass below tail_eps), or
  /// nullopt when the symbol has no momentum decay (polynomials).
  std::optional<double> momentum_radius(double tail_eps) const;

  const SymbolNode& node() const { return *node_; }
  std::shared_ptr<const SymbolNode> shared_node() const { return node_; }

  // family constructors
  static Symbol gaussian(const GaussianData& data);
  /// Isotropic phase-space Gaussian centered at c with width s, amplitude 1.
  static Symbol standard_gaussian(int dim, const PhaseSpacePoint& center,
                                  double width_x = 1.0, double width_xi = 1.0);
  /// Monomial sum: f = sum_t coeff_t * prod x_j^{px_j} * prod xi_j^{pxi_j}.
  struct Monomial {
    cplx coeff{0.0, 0.0};
    std::array<int, 3> px{0, 0, 0};
    std::array<int, 3> pxi{0, 0, 0};
  };
  static Symbol polynomial(int dim, std::vector<Monomial> terms);
  static Symbol coordinate(int dim, int axis);        // f = x_axis
  static Symbol momentum_coordinate(int dim, int axis);  // f = xi_axis
  /// Mollified character e_{X0}(Z) = exp(-i sigma(X0, Z)) * wide Gaussian.
  static Symbol mollified_character(const PhaseSpacePoint& x0, double width);
  /// Mollified constant one (character at the origin).
  static Symbol one_mollified(int dim, double width);
  static Symbol grid_symbol(GridSymbolData data);
  /// The twisted bracket {f, g}^B as a pointwise-evaluable symbol.
  static Symbol poisson_bracket_symbol(const MagneticField& b, Symbol f,
                                       Symbol g);

 private:
  std::shared_ptr<const SymbolNode> node_;
};

Symbol operator+(const Symbol& a, const Symbol& b);
Symbol operator-(const Symbol& a, const Symbol& b);
Symbol operator*(const Symbol& a, const Symbol& b);
Symbol operator*(cplx scale, const Symbol& a);
Symbol conj(const Symbol& a);

/// {f, g}^B at a point, using the symbols' analytic partials.
cplx poisson_bracket(const MagneticField& b, const Symbol& f, const Symbol& g,
                     const PhaseSpacePoint& x);

/// Relative L2 distance between two grid symbols on the same lattice.
double grid_symbol_distance(const GridSymbolData& a, const GridSymbolData& b);

/// L2 distance between a grid symbol and a closed-form symbol sampled on the
/// grid symbol's lattice, relative to the closed form's L2 mass.
double grid_symbol_distance(const GridSymbolData& a, const Symbol& reference);

}  // namespace magweyl
