#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "spinscreen/spin_domain.hpp"

namespace spinscreen {

/// Edge lengths of the tetrahedron attached to {a b x; c d y}. Faces are
/// (A,B,X), (C,D,X), (A,D,Y), (B,C,Y); X and Y are opposite edges.
struct Tetrahedron {
  double A = 0, B = 0, C = 0, D = 0, X = 0, Y = 0;

  /// Shifted edges E = e + 1/2.
  static Tetrahedron from_spins(TwoJ a, TwoJ b, TwoJ c, TwoJ d, TwoJ x, TwoJ y);
  static Tetrahedron from_point(const ScreenParams& p, TwoJ x, TwoJ y);
};

/// Shifted geometric length of a spin, j + 1/2.
inline double shifted(TwoJ j) noexcept { return j.j() + 0.5; }

/// 16 F², may be negative for a non-triangle.
double heron_radicand(double a, double b, double c) noexcept;
/// Triangle area. Throws NegativeRadicand for a non-triangle.
double heron_area(double a, double b, double c);

/// V² from the 5×5 Cayley–Menger determinant. Negative outside the
/// classically allowed region.
double volume_sq(const Tetrahedron& t);
/// V² as det(G)/36 of the Gram matrix of three edge vectors at a vertex.
double volume_sq_gram(const Tetrahedron& t);
/// V² from the expanded polynomial in the squared edges; the cheapest of the
/// three and the one used for bulk evaluation and root finding.
double volume_sq_poly(const Tetrahedron& t) noexcept;

/// (α² − β²)² − 2γ²(α² + β²) + γ⁴ = −16 F(α,β,γ)².
double lambda_quartic(double alpha, double beta, double gamma) noexcept;

/// Ridge Y at fixed X: location of maximal volume. nullopt where not real.
std::optional<double> ridge_y(double A, double B, double C, double D, double X) noexcept;
/// Ridge X at fixed Y.
std::optional<double> ridge_x(double A, double B, double C, double D, double Y) noexcept;
/// Maximal volume along Y at fixed X.
std::optional<double> volume_max(double A, double B, double C, double D, double X) noexcept;
/// The two zeros of V² in Y at fixed X, polished by bisection on V².
std::pair<std::optional<double>, std::optional<double>> caustic_y(double A, double B, double C, double D, double X);
/// The two zeros of V² in X at fixed Y, polished by bisection on V².
std::pair<std::optional<double>, std::optional<double>> caustic_x(double A, double B, double C, double D, double Y);

/// Ridges and caustics sampled on the shifted screen. Entries are nullopt
/// where the defining radicand is negative.
struct CausticData {
  std::vector<double> X;
  std::vector<std::optional<double>> y_vmax, v_max, y_z_minus, y_z_plus;
  std::vector<double> Y;
  std::vector<std::optional<double>> x_vmax, x_z_minus, x_z_plus;
};

/// samples_per_step points per lattice step, over x in [x_min, x_max] and
/// y in [y_min, y_max], shifted.
CausticData ridges_and_caustics(const ScreenParams& params, int samples_per_step = 1);

/// X′ used in the dihedral cosine.
enum class XPrime {
  ShiftedProduct,  // X′² = (X − 1/2)(X + 1/2)
  Plain,           // X′ = X
};

/// cos θ₃ at edge X from the face areas and the opposite edge. |cos θ₃| > 1
/// outside the classical region. Throws DegenerateFace when an X′ face has
/// nonpositive area.
double cos_theta3(const Tetrahedron& t, XPrime mode = XPrime::ShiftedProduct);
/// sin θ₃ = 3VX′ / (2 F F). Throws OutsideDomain when V² < 0.
double sin_theta3(const Tetrahedron& t, XPrime mode = XPrime::ShiftedProduct);
/// |cos θ₃| from sin θ₃, √(1 − sin²θ₃).
double cos_theta3_magnitude(const Tetrahedron& t, XPrime mode = XPrime::ShiftedProduct);

/// Geometric approximations to the three-term coefficients at one lattice
/// point, scaled to compare directly with the exact ones.
struct GeometricCoeffs {
  double p_minus_exact = 0, p_plus_exact = 0, w_lambda_exact = 0;
  /// Half-step face areas.
  double p_minus_areas = 0, p_plus_areas = 0, w_lambda_areas = 0;
  /// Geometric-mean form on integer-spaced X.
  double p_minus_mean = 0, p_plus_mean = 0, w_lambda_mean = 0;
};

GeometricCoeffs geometric_coeffs(TwoJ x, TwoJ y, const ScreenParams& params, XPrime mode = XPrime::ShiftedProduct);

enum class PBarMode { Arithmetic, Geometric };

struct PotentialCurves {
  std::vector<double> x;  // j units
  std::vector<double> w_plus, w_minus;
};

/// W±(x) = w(x) ± 2|p̄(x)| over the x lattice.
PotentialCurves potentials(const ScreenParams& params, PBarMode mode);

struct FTransform {
  std::vector<std::optional<double>> f;
  /// f(X+1) − 2 cos θ₃ f(X) + f(X−1) at interior points where all three f
  /// and cos θ₃ (X′ = X) are defined.
  std::vector<std::optional<double>> residual;
  std::vector<std::optional<double>> cos_theta3;
};

/// f(X) = √(F(X,A,B) F(X,C,D)) / X · U(x, y) along one row.
FTransform f_transform(std::span<const double> u_row, const ScreenParams& params, TwoJ y);

/// The X-interval of row y on which V² > 0, in shifted coordinates.
std::optional<std::pair<double, double>> classical_window(const ScreenParams& params, TwoJ y);

}  // namespace spinscreen
