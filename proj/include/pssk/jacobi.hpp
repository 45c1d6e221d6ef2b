#pragma once

#include <cstddef>
#include <vector>

namespace pssk {

// Eigenvalues of a symmetric matrix (row-major, n x n) in ascending order,
// computed with cyclic Jacobi rotations until the off-diagonal Frobenius norm
// drops below 1e-12 times the matrix norm. Throws NotSymmetric when the input
// is asymmetric beyond 1e-12 (relative), NoConvergence after 100 sweeps.
std::vector<double> sym_eigenvalues(const std::vector<double>& matrix, std::size_t n);

}  // namespace pssk
