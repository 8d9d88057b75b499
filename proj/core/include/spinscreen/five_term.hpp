#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "spinscreen/exact_value.hpp"
#include "spinscreen/screen.hpp"
#include "spinscreen/spin_domain.hpp"

namespace spinscreen {

/// Coefficients of the five-term cross recursion. For lattice index ix the
/// x-side coefficients are
///   L_k(x) = (−1)^{2x} √(2x′+1) {b x′ a; 1 a x} {d x′ c; 1 c x},  x′ = x−1, x, x+1
/// and for iy the y-side ones are
///   R_k(y) = (−1)^{2y} √(2y′+1) {b y′ c; 1 c y} {d y′ a; 1 a y},  y′ = y−1, y, y+1.
/// The relation reads
///   Σ_k L_k(x) U(x′, y) / √(2y+1) = Σ_k R_k(y) U(x, y′) / √(2x+1).
struct FiveTermCoeffs {
  ScreenParams params;
  std::vector<std::array<ExactValue, 3>> left_exact;
  std::vector<std::array<ExactValue, 3>> right_exact;
  std::vector<std::array<double, 3>> left;
  std::vector<std::array<double, 3>> right;
};

FiveTermCoeffs five_term_coeffs(const ScreenParams& params);

/// Coefficients of U(x−1,y), U(x+1,y), U(x,y−1), U(x,y+1), U(x,y) in the
/// relation written as LHS − RHS = 0.
std::array<double, 5> five_term_stencil(const FiveTermCoeffs& c, std::size_t ix, std::size_t iy);

/// |LHS − RHS| at an interior lattice point relative to the largest single
/// term of the stencil.
double five_term_residual(const FiveTermCoeffs& c, const Screen& s, std::size_t ix, std::size_t iy);

/// Two adjacent complete rows, at y_min and y_min + 1.
struct SeedRows {
  std::vector<double> first;
  std::vector<double> second;
};

struct Recur2DOptions {
  /// Working precision of the first pass in bits; 0 picks one from the
  /// screen size. With exact seeds the precision is doubled until the
  /// produced rows are orthonormal to within target_defect.
  long precision_bits = 0;
  long max_precision_bits = 1 << 15;
  double target_defect = 1e-13;
};

/// Screen from the five-term recursion seeded with exact oracle rows, run in
/// adaptive multiprecision.
Screen screen_by_2d(const ScreenParams& params, const Recur2DOptions& options = {});

/// Screen from caller-supplied seed rows in a single pass. Throws SeedMismatch
/// if the seeds are not orthonormal to 1e−8. The recursion is unstable in
/// the classically forbidden directions, so inexact seeds are only useful on
/// small screens.
Screen screen_by_2d(const ScreenParams& params, const SeedRows& seed, const Recur2DOptions& options = {});

}  // namespace spinscreen
