#pragma once

// Dense Hermitian spectra for the spectrum experiments. The matrices here
// are the h^N-weighted kernels, so the eigenvalues are those of the operator
// action (S u)(x_i) = h^N sum_j K(x_i, x_j) u(x_j).

#include <vector>

#include "magweyl/grid.hpp"

namespace magweyl {

/// Eigenvalues of the (Hermitian) operator in ascending order.
std::vector<double> hermitian_eigenvalues(const KernelOperator& s);

/// Eigenvalues of the compression of S onto the span of the given grid
/// points (hard-wall restriction to a subdomain).
std::vector<double> hermitian_eigenvalues_restricted(
    const KernelOperator& s, const std::vector<std::size_t>& keep);

/// Full singular value decomposition (descending); small oracles only.
std::vector<double> singular_values(const KernelOperator& s);

}  // namespace magweyl
