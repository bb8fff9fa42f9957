// Dense matrix algebra that goes through Eigen: the operator composition
// (a plain complex GEMM) and Hermitian eigenvalue extraction for the
// spectrum experiments.

#include <Eigen/Dense>

#include "magweyl/grid.hpp"
#include "magweyl/spectrum.hpp"

namespace magweyl {

namespace {
using MatC = Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                           Eigen::Dynamic, Eigen::RowMajor>;
using MapC = Eigen::Map<MatC>;
using ConstMapC = Eigen::Map<const MatC>;
}  // namespace

KernelOperator operator_product(const KernelOperator& s1,
                                const KernelOperator& s2) {
  if (!(s1.grid() == s2.grid()))
    throw InputError("operator_product: grid mismatch");
  const auto n = static_cast<Eigen::Index>(s1.size());
  KernelOperator out(s1.grid());
  ConstMapC a(s1.kernel().data(), n, n);
  ConstMapC b(s2.kernel().data(), n, n);
  MapC c(out.kernel().data(), n, n);
  c.noalias() = a * b;
  c *= s1.grid().cell_volume();
  return out;
}

std::vector<double> hermitian_eigenvalues(const KernelOperator& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  ConstMapC k(s.kernel().data(), n, n);
  MatC scaled = k * s.grid().cell_volume();
  Eigen::SelfAdjointEigenSolver<MatC> solver(scaled,
                                             Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("hermitian_eigenvalues: eigensolver failed");
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + n);
  return ev;
}

std::vector<double> hermitian_eigenvalues_restricted(
    const KernelOperator& s, const std::vector<std::size_t>& keep) {
  const auto n = static_cast<Eigen::Index>(keep.size());
  MatC sub(n, n);
  const double hN = s.grid().cell_volume();
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      sub(r, c) = s.at(keep[r], keep[c]) * hN;
  Eigen::SelfAdjointEigenSolver<MatC> solver(sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw NumericalError("hermitian_eigenvalues: eigensolver failed");
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + n);
  return ev;
}

std::vector<double> singular_values(const KernelOperator& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  ConstMapC k(s.kernel().data(), n, n);
  MatC scaled = k * s.grid().cell_volume();
  Eigen::JacobiSVD<MatC> svd(scaled);
  std::vector<double> sv(svd.singularValues().data(),
                         svd.singularValues().data() + n);
  return sv;
}

}  // namespace magweyl
