#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spinscreen {

/// Eigen-decomposition of a real symmetric tridiagonal matrix.
struct TridiagonalEigen {
  std::size_t n = 0;
  /// Ascending.
  std::vector<double> values;
  /// Column-major: eigenvector k occupies vectors[k*n .. k*n+n).
  std::vector<double> vectors;

  std::span<const double> vector(std::size_t k) const { return {vectors.data() + k * n, n}; }
  std::span<double> vector(std::size_t k) { return {vectors.data() + k * n, n}; }
};

/// Implicit QL with Wilkinson shifts. diag has n entries, off has n-1 (the
/// super-diagonal). Throws ConvergenceFailure if an eigenvalue fails to
/// converge.
TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> off);

}  // namespace spinscreen
