#pragma once

#include <cstddef>
#include <string>

#include "spinscreen/exact_value.hpp"
#include "spinscreen/spin_domain.hpp"

namespace spinscreen {

/// {a b c; d e f; g h j}
struct NineJArgs {
  TwoJ a, b, c, d, e, f, g, h, j;

  /// Rows and columns all admissible triads.
  bool admissible() const noexcept;
  std::string to_string() const;
};

/// Σ_x (−1)^{2x} (2x+1) {a b c; f j x} {d e f; b x h} {g h j; x a d} with
/// exact 6j factors; the sum is exact.
SurdSum ninej_exact(const NineJArgs& args);
/// Inadmissible arguments give 0.
double ninej_oracle(const NineJArgs& args);

struct RecurrenceCoeffs9j {
  double A = 0;
  double B = 0;
};

/// A_q(pr, st) and B_q(pr, st), arguments in j units.
///   A_q = √[(−p+r+q)(p−r+q)(p+r−q+1)(p+r+q+1)] √[(−s+t+q)(s−t+q)(s+t−q+1)(s+t+q+1)]
///   B_q = [q(q+1) − p(p+1) + r(r+1)] [q(q+1) − s(s+1) + t(t+1)]
/// A is 0 when a radicand is negative, which only happens for a vanishing
/// neighbour symbol.
RecurrenceCoeffs9j ninej_coeffs(double q, double p, double r, double s, double t);

/// Argument order of the B terms in the diagonal coefficient.
enum class BOrder {
  /// B_c(ba, jf) and B_d(ga, ef); the order for which the relation holds.
  Verified,
  /// B_c(ab, fj) and B_d(ag, fe).
  Literal,
};

struct NineJResidual {
  /// |LHS − RHS|
  double absolute = 0;
  /// Largest single term of the stencil.
  double scale = 0;
  /// absolute / scale, 0 when every term vanishes.
  double relative = 0;
};

/// Residual of the two-variable 9j recurrence in c and d at args. Requires
/// c ≥ 1/2 and d ≥ 1/2 (InvalidArgument otherwise).
NineJResidual ninej_residual(const NineJArgs& args, BOrder order = BOrder::Verified);

/// Coefficients of the 9j recurrence for h = 0, rewritten on U of the screen
/// (a, b, f, g) → {a b x; f g y} and compared entrywise with the five-term
/// coefficients.
struct ReductionReport {
  std::size_t stencils = 0;
  std::size_t skipped = 0;
  /// max over stencils of max_k |r_k − r̄| / |r̄| with r_k the ratio of
  /// matching coefficients.
  double max_ratio_deviation = 0;
  /// Entries nonzero on one side only.
  std::size_t mismatched_zeros = 0;
};

/// Checks every interior stencil with x, y ≥ 1/2, or at most max_stencils
/// of them spread evenly over the screen when max_stencils > 0.
ReductionReport reduction_check(const ScreenParams& params, std::size_t max_stencils = 0,
                                BOrder order = BOrder::Verified);

}  // namespace spinscreen
