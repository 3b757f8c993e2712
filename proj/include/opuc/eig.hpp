#ifndef OPUC_EIG_HPP
#define OPUC_EIG_HPP

#include <vector>

#include "opuc/types.hpp"

namespace opuc {

/// Eigenvalues of a dense complex matrix (row-major, n x n).
/// Backed by a Schur decomposition; throws Error on non-convergence.
std::vector<cd> dense_eigenvalues(const std::vector<cd>& matrix,
                                  std::size_t n);

}  // namespace opuc

#endif  // OPUC_EIG_HPP
