#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <utility>

namespace spinscreen {

/// Twice an angular momentum, stored as a nonnegative integer so that
/// half-integer spins stay exact. TwoJ{3} is j = 3/2.
class TwoJ {
 public:
  constexpr TwoJ() = default;
  explicit TwoJ(int twice);

  constexpr int twice() const noexcept { return twice_; }
  constexpr double j() const noexcept { return 0.5 * twice_; }
  constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

  friend constexpr auto operator<=>(TwoJ, TwoJ) = default;

 private:
  int twice_ = 0;
};

/// True iff (a, b, c) is an admissible angular-momentum triad: triangle
/// inequality and a + b + c integral.
bool triad_ok(TwoJ a, TwoJ b, TwoJ c) noexcept;
bool triad_ok(int two_a, int two_b, int two_c) noexcept;

/// The six entries of {a b x; c d y}.
struct SixJArgs {
  TwoJ a, b, x, c, d, y;

  bool admissible() const noexcept;
  std::string to_string() const;
  friend bool operator==(const SixJArgs&, const SixJArgs&) = default;
};

/// Fixed parameters of a screen together with the derived lattice ranges.
/// All range fields are TwoJ; the lattice steps by 2 in TwoJ units.
struct ScreenParams {
  TwoJ a, b, c, d;
  TwoJ x_min, x_max, y_min, y_max;
  TwoJ two_kappa;  // x_max - x_min == y_max - y_min
  TwoJ s;          // (a + b + c + d) / 2

  /// Number of lattice points along each side, 2κ + 1.
  std::size_t side() const noexcept { return static_cast<std::size_t>(two_kappa.twice() / 2 + 1); }
  TwoJ x_at(std::size_t i) const { return TwoJ(x_min.twice() + 2 * static_cast<int>(i)); }
  TwoJ y_at(std::size_t i) const { return TwoJ(y_min.twice() + 2 * static_cast<int>(i)); }
  /// Lattice index of x; throws OutOfRange when x is off the lattice.
  std::size_t x_index(TwoJ x) const;
  std::size_t y_index(TwoJ y) const;

  SixJArgs args(TwoJ x, TwoJ y) const { return SixJArgs{a, b, x, c, d, y}; }
  std::array<int, 4> quad() const noexcept { return {a.twice(), b.twice(), c.twice(), d.twice()}; }

  friend bool operator==(const ScreenParams&, const ScreenParams&) = default;
};

/// Ranges of x and y for fixed (a, b, c, d). Throws EmptyScreen if the
/// ranges are empty or the parity of a + b + c + d is odd.
ScreenParams screen_ranges(TwoJ a, TwoJ b, TwoJ c, TwoJ d);
ScreenParams screen_ranges(int two_a, int two_b, int two_c, int two_d);

/// (s - a, s - b, s - c, s - d). Throws ParityError if a + b + c + d is odd
/// in TwoJ units.
std::array<TwoJ, 4> regge_conjugate(TwoJ a, TwoJ b, TwoJ c, TwoJ d);
ScreenParams regge_conjugate(const ScreenParams& p);

/// The classical placements of (a, b, c, d) that keep x on top and y below.
enum class ClassicalPermutation {
  Identity,        // (a, b, c, d)
  SwapWithinRows,  // (b, a, d, c)
  Reverse,         // (d, c, b, a)
  SwapRows,        // (c, d, a, b)
};

struct CanonicalForm {
  ScreenParams params;
  bool regge_applied = false;
  ClassicalPermutation permutation = ClassicalPermutation::Identity;
  bool xy_swapped = false;

  /// Where the point (x, y) of the original screen lands on the canonical one.
  std::pair<TwoJ, TwoJ> map_point(TwoJ x, TwoJ y) const noexcept {
    return xy_swapped ? std::pair{y, x} : std::pair{x, y};
  }
};

/// Representative of the symmetry orbit with the smallest entry in the upper
/// left corner and a <= b <= d. Ties prefer the non-Regge set, then the
/// lexicographically smallest (a, b, c, d), then no x/y exchange.
CanonicalForm canonicalize(TwoJ a, TwoJ b, TwoJ c, TwoJ d);
CanonicalForm canonicalize(const ScreenParams& p);

/// Lower and upper bound (in that order) of the canonical c window, taken as
/// the ordered pair of d - a + b and d + a - b.
std::pair<int, int> canonical_c_window(const ScreenParams& p) noexcept;

}  // namespace spinscreen
