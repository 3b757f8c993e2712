#include "opuc/eig.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "opuc/errors.hpp"

namespace opuc {

std::vector<cd> dense_eigenvalues(const std::vector<cd>& matrix,
                                  std::size_t n) {
  if (matrix.size() != n * n)
    throw DomainError("dense_eigenvalues: size mismatch");
  Eigen::MatrixXcd A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          matrix[i * n + j];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A, false);
  if (solver.info() != Eigen::Success)
    throw Error("dense_eigenvalues: eigensolver did not converge");
  std::vector<cd> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  return out;
}

}  // namespace opuc
