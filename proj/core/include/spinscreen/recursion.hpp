#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spinscreen/screen.hpp"
#include "spinscreen/spin_domain.hpp"

namespace spinscreen {

/// p₊(x) of the symmetric three-term relation, with x in j units. Vanishes
/// at x = x_max and at x = x_min − 1.
double p_plus(const ScreenParams& p, double x);
/// Diagonal w(x). At x = 0 the removable singularity is replaced by its
/// limit; throws SingularCoefficient if the limit does not exist.
double w_coeff(const ScreenParams& p, double x);
/// λ(y) = 2[y(y+1) − b(b+1) − c(c+1)].
double lambda_coeff(const ScreenParams& p, double y);

struct TridiagCoeffs {
  ScreenParams params;
  /// Indexed by x lattice index; p_plus.back() == 0.
  std::vector<double> p_plus;
  std::vector<double> w;
  /// Indexed by y lattice index.
  std::vector<double> lambda;

  double p_minus(std::size_t ix) const noexcept { return ix == 0 ? 0.0 : p_plus[ix - 1]; }
  double w_lambda(std::size_t ix, std::size_t iy) const noexcept { return w[ix] - lambda[iy]; }
};

TridiagCoeffs tridiag_coeffs(const ScreenParams& params);

/// Sign of U(x_max, y), the same for every row: (−1)^(a+b+c+d).
int boundary_sign(const ScreenParams& params) noexcept;

/// Full screen from the eigenvectors of the tridiagonal matrix. Rows are
/// assigned by ascending eigenvalue; each row's sign is fixed to match the
/// boundary recursion started at x_max.
Screen screen_by_eigensolve(const ScreenParams& params);

/// One row U(·, y) from the three-term relation run inward from both ends and
/// matched inside the classical window. Throws MatchFailure if the two
/// branches cannot be joined.
std::vector<double> row_by_threeterm(TwoJ y, const ScreenParams& params);
std::vector<double> row_by_threeterm(std::size_t iy, const TridiagCoeffs& coeffs);

/// Screen assembled row by row from row_by_threeterm; rows whose match fails
/// are taken from the eigensolver.
Screen screen_by_threeterm(const ScreenParams& params);

/// max over interior x of |p₊U(x+1) + wU(x) + p₋U(x−1) − λU(x)|, divided by
/// ‖row‖∞ times the largest row sum of |coefficients|.
double threeterm_residual(const TridiagCoeffs& coeffs, std::size_t iy, std::span<const double> row);

}  // namespace spinscreen
