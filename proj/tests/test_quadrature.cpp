#include "magweyl/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"

using magweyl::gauss_hermite;
using magweyl::gauss_legendre_01;

TEST_CASE("gauss-legendre integrates monomials exactly") {
  for (int order : {2, 4, 8, 16, 32}) {
    const auto& rule = gauss_legendre_01(order);
    for (int p = 0; p <= 2 * order - 1; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * std::pow(rule.nodes[i], p);
      CHECK(s == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("gauss-legendre handles smooth non-polynomial integrands") {
  const auto& rule = gauss_legendre_01(16);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    s += rule.weights[i] * std::exp(rule.nodes[i]);
  CHECK(s == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
}

TEST_CASE("gauss-hermite reproduces gaussian moments") {
  for (int order : {4, 8, 12, 24, 40}) {
    const auto& rule = gauss_hermite(order);
    // integral t^{2m} e^{-t^2} = Gamma(m + 1/2)
    double expected = std::sqrt(std::numbers::pi);
    for (int m = 0; 2 * m <= 2 * order - 2; ++m) {
      if (m > 0) expected *= (m - 0.5);
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * std::pow(rule.nodes[i], 2 * m);
      CHECK(s == doctest::Approx(expected).epsilon(1e-11));
      // odd moments vanish by symmetry of the rule
      double odd = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        odd += rule.weights[i] * std::pow(rule.nodes[i], 2 * m + 1);
      CHECK(std::abs(odd) < 1e-10 * std::max(1.0, expected));
    }
  }
}

TEST_CASE("gauss-hermite handles oscillatory integrands") {
  // integral e^{-t^2} cos(a t) = sqrt(pi) e^{-a^2/4}
  const auto& rule = gauss_hermite(48);
  for (double a : {0.5, 2.0, 5.0}) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * std::cos(a * rule.nodes[i]);
    CHECK(s == doctest::Approx(std::sqrt(std::numbers::pi) *
                               std::exp(-a * a / 4.0))
                   .epsilon(1e-10));
  }
}
