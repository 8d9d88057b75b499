#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spinscreen/spin_domain.hpp"

namespace spinscreen {

enum class Method { Oracle, Eigensolve, ThreeTerm, Recur2D };

std::string_view to_string(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

struct ScreenDiagnostics {
  /// Largest recursion residual of the generating method, normalized as in
  /// threeterm_residual or five_term_residual.
  double max_residual = 0.0;
  /// max |U Uᵀ − I| over both row and column products.
  double orthonormality_defect = 0.0;
  /// Eigensolve only: max |eigenvalue − λ(y)| / max |λ|.
  double max_eigenvalue_error = 0.0;
  /// 2D recursion only: lattice points filled from the exact oracle because
  /// the propagation pivot vanished.
  std::size_t oracle_fallbacks = 0;
  /// 2D recursion only: working precision of the final pass, in bits.
  long precision_bits = 0;
};

/// Dense (2κ+1)×(2κ+1) grid of U(x, y). Storage is row-major with one row per
/// y, so row(iy) is the vector U(·, y) over the x lattice.
class Screen {
 public:
  Screen(const ScreenParams& params, Method method);

  const ScreenParams& params() const noexcept { return params_; }
  Method method() const noexcept { return method_; }
  std::size_t side() const noexcept { return side_; }

  double operator()(std::size_t ix, std::size_t iy) const noexcept { return values_[iy * side_ + ix]; }
  double& operator()(std::size_t ix, std::size_t iy) noexcept { return values_[iy * side_ + ix]; }
  double at(TwoJ x, TwoJ y) const { return (*this)(params_.x_index(x), params_.y_index(y)); }

  std::span<const double> row(std::size_t iy) const noexcept { return {values_.data() + iy * side_, side_}; }
  std::span<double> row(std::size_t iy) noexcept { return {values_.data() + iy * side_, side_}; }
  std::span<const double> values() const noexcept { return values_; }

  ScreenDiagnostics& diagnostics() noexcept { return diagnostics_; }
  const ScreenDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  ScreenParams params_;
  Method method_;
  std::size_t side_;
  std::vector<double> values_;
  ScreenDiagnostics diagnostics_;
};

double orthonormality_defect(const Screen& s);
double max_abs_difference(const Screen& l, const Screen& r);
/// Scales every row to unit Euclidean norm; returns the largest |‖row‖² − 1|
/// seen before scaling.
double normalize_rows(Screen& s);

}  // namespace spinscreen
