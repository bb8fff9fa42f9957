#pragma once

#include <vector>

namespace magweyl {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [0, 1]: integrates polynomials of degree
/// 2*order - 1 exactly. Rules are cached per order.
const QuadratureRule& gauss_legendre_01(int order);

/// Gauss-Hermite rule with weight exp(-t^2) on the whole line.
const QuadratureRule& gauss_hermite(int order);

}  // namespace magweyl
