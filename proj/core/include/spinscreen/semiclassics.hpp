#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "spinscreen/geometry.hpp"
#include "spinscreen/screen.hpp"
#include "spinscreen/spin_domain.hpp"

namespace spinscreen {

/// p = √(2 − 2 cos θ₃) with X′ = X. Throws OutsideDomain where |cos θ₃| > 1
/// or an adjacent face is degenerate.
double local_momentum(TwoJ x, TwoJ y, const ScreenParams& params);

struct BohrSommerfeld {
  /// ∫ θ₃ dX across the classical window, θ₃ = arccos(cos θ₃) with X′ = X.
  double action = 0;
  /// action / π − 1/2.
  double n_estimate = 0;
  /// 2 Σ p over the lattice by the trapezoid rule with linearly interpolated
  /// turning points, p = √(2 − 2 cos θ₃).
  double lattice_action = 0;
  double x_lo = 0, x_hi = 0;
};

/// Throws NoClassicalWindow when V² ≤ 0 along the whole row.
BohrSommerfeld bohr_sommerfeld(TwoJ y, const ScreenParams& params);

/// Angles at edges A, B, X (θ₁, θ₂, θ₃) and C, D, Y (η₁, η₂, η₃). Each is
/// the angle between the outward face normals, so a regular tetrahedron
/// gives arccos(−1/3).
struct DihedralAngles {
  double theta1 = 0, theta2 = 0, theta3 = 0;
  double eta1 = 0, eta2 = 0, eta3 = 0;
  double volume = 0;
};

/// Throws OutsideDomain when V² ≤ 0.
DihedralAngles dihedral_angles(const Tetrahedron& t);

struct PRAmplitude {
  /// Estimate of the plain 6j symbol.
  double sixj = 0;
  /// Estimate of U, sixj · √((2x+1)(2y+1)).
  double u = 0;
  /// 1/√(12π|V|).
  double envelope = 0;
  double phase = 0;
  double cos_theta3 = 0;
  /// |cos θ₃| > 0.9: the estimate is unreliable this close to a caustic.
  bool caustic_proximity = false;
};

/// Ponzano–Regge estimate cos(Φ)/√(12π|V|) on shifted edges. Throws
/// OutsideDomain when V² ≤ 0.
PRAmplitude pr_amplitude(TwoJ x, TwoJ y, const ScreenParams& params);

struct PRPoint {
  TwoJ x, y;
  /// nullopt: classically forbidden or degenerate point.
  std::optional<PRAmplitude> estimate;
  double exact = 0;  // plain 6j
  std::optional<double> abs_error, rel_error;
  bool interior = false;
  bool caustic_band = false;
};

struct PRComparison {
  std::size_t side = 0;
  std::vector<PRPoint> points;  // row-major in y like Screen
  std::size_t forbidden = 0;
  /// Interior: X in the middle half of the row's classical X-window, Y in the
  /// middle half of the column's classical Y-window, |cos θ₃| ≤ 0.5 and
  /// |exact| ≥ 5% of the envelope.
  std::size_t interior_count = 0;
  double interior_max_rel = 0;
  double interior_sign_agreement = 0;
  /// |cos θ₃| > 0.9 with the same envelope cut.
  std::size_t band_count = 0;
  double band_max_rel = 0;
};

/// Compares the estimate against an exact screen over every lattice point.
PRComparison pr_compare(const ScreenParams& params, const Screen& exact);

}  // namespace spinscreen
