#pragma once

#include "spinscreen/exact_value.hpp"
#include "spinscreen/screen.hpp"
#include "spinscreen/spin_domain.hpp"

namespace spinscreen {

/// Exact {a b x; c d y} from the single-sum Racah formula in big-integer
/// arithmetic. Inadmissible triads give exact zero.
ExactValue sixj_exact(const SixJArgs& args);

/// to_double(sixj_exact(args)).
double sixj(const SixJArgs& args);

/// U(x, y) = √((2x+1)(2y+1)) {a b x; c d y}, exact. Throws OutOfRange when
/// (x, y) is off the screen lattice.
ExactValue u_exact(TwoJ x, TwoJ y, const ScreenParams& params);

/// Closed form for a 6j symbol with one entry equal to 1 (TwoJ 2). Throws
/// PatternError when no entry equals 1.
ExactValue sixj_unit(const SixJArgs& args);

/// Dense screen of exact U values rounded to double.
Screen screen_oracle(const ScreenParams& params);

}  // namespace spinscreen
