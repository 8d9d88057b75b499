#include "spinscreen/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "spinscreen/error.hpp"
#include "spinscreen/recursion.hpp"

namespace spinscreen {

namespace {

template <std::size_t N>
long double determinant(std::array<std::array<long double, N>, N> m) {
  long double det = 1.0L;
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    if (m[piv][col] == 0.0L) return 0.0L;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < N; ++r) {
      const long double f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < N; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

double area_or_zero(double a, double b, double c) noexcept {
  const double r = heron_radicand(a, b, c);
  return r > 0.0 ? 0.25 * std::sqrt(r) : 0.0;
}

// Refines a root of f near guess by bisection once a sign change is bracketed.
template <class F>
double polish_root(F&& f, double guess) {
  const double scale = std::max(1.0, std::abs(guess));
  double delta = 1e-9 * scale;
  double lo = guess - delta, hi = guess + delta;
  double flo = f(lo), fhi = f(hi);
  while ((flo > 0) == (fhi > 0)) {
    delta *= 4.0;
    if (delta > 1e-2 * scale) return guess;
    lo = guess - delta;
    hi = guess + delta;
    flo = f(lo);
    fhi = f(hi);
  }
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Zeros of V² along the second edge of an opposite pair, from the closed form
// r0² ± √(Λ₁Λ₂)/(2e²) with r0² the ridge value.
std::pair<std::optional<double>, std::optional<double>> caustic_pair(double ridge_sq, double l1, double l2, double e,
                                                                      auto&& vsq) {
  if (l1 > 0.0 || l2 > 0.0) return {};
  const double half_width = std::sqrt(l1 * l2) / (2.0 * e * e);
  std::pair<std::optional<double>, std::optional<double>> out;
  const double lo_sq = ridge_sq - half_width, hi_sq = ridge_sq + half_width;
  if (lo_sq >= 0.0) out.first = polish_root(vsq, std::sqrt(lo_sq));
  if (hi_sq >= 0.0) out.second = polish_root(vsq, std::sqrt(hi_sq));
  return out;
}

long double volume_sq_ld(double A, double B, double C, double D, double X, double Y) noexcept {
  const long double a = static_cast<long double>(A) * A, b = static_cast<long double>(B) * B,
                    c = static_cast<long double>(C) * C, d = static_cast<long double>(D) * D,
                    x = static_cast<long double>(X) * X, y = static_cast<long double>(Y) * Y;
  return a * c * (b + d + x + y - a - c) + b * d * (a + c + x + y - b - d) + x * y * (a + b + c + d - x - y) -
         a * b * x - c * d * x - a * d * y - b * c * y;
}

double ridge_y_sq(double A, double B, double C, double D, double X) noexcept {
  const double a = A * A, b = B * B, c = C * C, d = D * D, x = X * X;
  return ((a - b) * (c - d) + (a + b + c + d) * x - x * x) / (2.0 * x);
}

double ridge_x_sq(double A, double B, double C, double D, double Y) noexcept {
  const double a = A * A, b = B * B, c = C * C, d = D * D, y = Y * Y;
  return ((a - d) * (c - b) + (a + b + c + d) * y - y * y) / (2.0 * y);
}

double xprime(double X, XPrime mode) {
  return mode == XPrime::Plain ? X : std::sqrt(X * X - 0.25);
}

}  // namespace

Tetrahedron Tetrahedron::from_spins(TwoJ a, TwoJ b, TwoJ c, TwoJ d, TwoJ x, TwoJ y) {
  return {shifted(a), shifted(b), shifted(c), shifted(d), shifted(x), shifted(y)};
}

Tetrahedron Tetrahedron::from_point(const ScreenParams& p, TwoJ x, TwoJ y) {
  return from_spins(p.a, p.b, p.c, p.d, x, y);
}

double heron_radicand(double a, double b, double c) noexcept {
  return (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
}

double heron_area(double a, double b, double c) {
  if (a < 0 || b < 0 || c < 0) throw Error(ErrorCode::InvalidArgument, "negative side length");
  const double r = heron_radicand(a, b, c);
  if (r < 0.0) throw Error(ErrorCode::NegativeRadicand, "sides violate the triangle inequality");
  return 0.25 * std::sqrt(r);
}

double volume_sq(const Tetrahedron& t) {
  const long double A = t.A * t.A, B = t.B * t.B, C = t.C * t.C, D = t.D * t.D, X = t.X * t.X, Y = t.Y * t.Y;
  const std::array<std::array<long double, 5>, 5> cm{{
      {0, C, D, Y, 1},
      {C, 0, X, B, 1},
      {D, X, 0, A, 1},
      {Y, B, A, 0, 1},
      {1, 1, 1, 1, 0},
  }};
  return static_cast<double>(determinant(cm) / 288.0L);
}

double volume_sq_gram(const Tetrahedron& t) {
  // Vertex 1 with edges C, D, Y to vertices 2, 3, 4; X = |23|, B = |24|, A = |34|.
  const long double c = t.C * t.C, d = t.D * t.D, y = t.Y * t.Y;
  const long double uv = (c + d - static_cast<long double>(t.X) * t.X) / 2;
  const long double uw = (c + y - static_cast<long double>(t.B) * t.B) / 2;
  const long double vw = (d + y - static_cast<long double>(t.A) * t.A) / 2;
  const std::array<std::array<long double, 3>, 3> g{{{c, uv, uw}, {uv, d, vw}, {uw, vw, y}}};
  return static_cast<double>(determinant(g) / 36.0L);
}

double volume_sq_poly(const Tetrahedron& t) noexcept {
  const double a = t.A * t.A, b = t.B * t.B, c = t.C * t.C, d = t.D * t.D, x = t.X * t.X, y = t.Y * t.Y;
  return (a * c * (b + d + x + y - a - c) + b * d * (a + c + x + y - b - d) + x * y * (a + b + c + d - x - y) -
          a * b * x - c * d * x - a * d * y - b * c * y) /
         144.0;
}

double lambda_quartic(double alpha, double beta, double gamma) noexcept {
  const double a = alpha * alpha, b = beta * beta, g = gamma * gamma;
  return (a - b) * (a - b) - 2.0 * g * (a + b) + g * g;
}

std::optional<double> ridge_y(double A, double B, double C, double D, double X) noexcept {
  const double r = ridge_y_sq(A, B, C, D, X);
  if (!(r >= 0.0)) return std::nullopt;
  return std::sqrt(r);
}

std::optional<double> ridge_x(double A, double B, double C, double D, double Y) noexcept {
  const double r = ridge_x_sq(A, B, C, D, Y);
  if (!(r >= 0.0)) return std::nullopt;
  return std::sqrt(r);
}

std::optional<double> volume_max(double A, double B, double C, double D, double X) noexcept {
  const double l1 = lambda_quartic(A, B, X), l2 = lambda_quartic(C, D, X);
  if (l1 > 0.0 || l2 > 0.0) return std::nullopt;
  return std::sqrt(l1 * l2) / (24.0 * X);
}

std::pair<std::optional<double>, std::optional<double>> caustic_y(double A, double B, double C, double D, double X) {
  auto vsq = [&](double Y) { return volume_sq_ld(A, B, C, D, X, Y); };
  return caustic_pair(ridge_y_sq(A, B, C, D, X), lambda_quartic(A, B, X), lambda_quartic(C, D, X), X, vsq);
}

std::pair<std::optional<double>, std::optional<double>> caustic_x(double A, double B, double C, double D, double Y) {
  auto vsq = [&](double X) { return volume_sq_ld(A, B, C, D, X, Y); };
  return caustic_pair(ridge_x_sq(A, B, C, D, Y), lambda_quartic(A, D, Y), lambda_quartic(B, C, Y), Y, vsq);
}

CausticData ridges_and_caustics(const ScreenParams& params, int samples_per_step) {
  if (samples_per_step < 1) throw Error(ErrorCode::InvalidArgument, "samples_per_step must be positive");
  const double A = shifted(params.a), B = shifted(params.b), C = shifted(params.c), D = shifted(params.d);
  const std::size_t steps = params.side() - 1;
  const std::size_t count = steps * static_cast<std::size_t>(samples_per_step) + 1;
  CausticData out;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / samples_per_step;
    const double X = shifted(params.x_min) + t;
    const double Y = shifted(params.y_min) + t;
    out.X.push_back(X);
    out.y_vmax.push_back(ridge_y(A, B, C, D, X));
    out.v_max.push_back(volume_max(A, B, C, D, X));
    auto [ylo, yhi] = caustic_y(A, B, C, D, X);
    out.y_z_minus.push_back(ylo);
    out.y_z_plus.push_back(yhi);
    out.Y.push_back(Y);
    out.x_vmax.push_back(ridge_x(A, B, C, D, Y));
    auto [xlo, xhi] = caustic_x(A, B, C, D, Y);
    out.x_z_minus.push_back(xlo);
    out.x_z_plus.push_back(xhi);
  }
  return out;
}

double cos_theta3(const Tetrahedron& t, XPrime mode) {
  const double xp2 = mode == XPrime::Plain ? t.X * t.X : t.X * t.X - 0.25;
  const double xp = std::sqrt(std::max(xp2, 0.0));
  const double r1 = heron_radicand(xp, t.B, t.A), r2 = heron_radicand(xp, t.D, t.C);
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error(ErrorCode::DegenerateFace, "face adjacent to X has no area");
  const double A2 = t.A * t.A, B2 = t.B * t.B, C2 = t.C * t.C, D2 = t.D * t.D, Y2 = t.Y * t.Y;
  const double num = 2 * xp2 * Y2 - xp2 * (-xp2 + D2 + C2) - B2 * (xp2 + D2 - C2) - A2 * (xp2 - D2 + C2);
  return num / std::sqrt(r1 * r2);
}

double sin_theta3(const Tetrahedron& t, XPrime mode) {
  const double xp = xprime(t.X, mode);
  const double r1 = heron_radicand(xp, t.B, t.A), r2 = heron_radicand(xp, t.D, t.C);
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error(ErrorCode::DegenerateFace, "face adjacent to X has no area");
  Tetrahedron tp = t;
  tp.X = xp;
  const double v2 = volume_sq_poly(tp);
  if (v2 < 0.0) throw Error(ErrorCode::OutsideDomain, "negative squared volume");
  // 16 F F = √(r1 r2)
  return 24.0 * std::sqrt(v2) * xp / std::sqrt(r1 * r2);
}

double cos_theta3_magnitude(const Tetrahedron& t, XPrime mode) {
  const double s = sin_theta3(t, mode);
  return std::sqrt(std::max(0.0, 1.0 - s * s));
}

GeometricCoeffs geometric_coeffs(TwoJ x, TwoJ y, const ScreenParams& params, XPrime mode) {
  (void)params.x_index(x);
  (void)params.y_index(y);
  const auto t = Tetrahedron::from_point(params, x, y);
  const double A = t.A, B = t.B, C = t.C, D = t.D, X = t.X;
  GeometricCoeffs g;
  g.p_plus_exact = x == params.x_max ? 0.0 : p_plus(params, x.j());
  g.p_minus_exact = x == params.x_min ? 0.0 : p_plus(params, x.j() - 1);
  g.w_lambda_exact = w_coeff(params, x.j()) - lambda_coeff(params, y.j());

  const double hp = X + 0.5, hm = X - 0.5;
  g.p_plus_areas = 8.0 * area_or_zero(hp, A, B) * area_or_zero(hp, C, D) / (hp * hp);
  g.p_minus_areas = hm > 0.0 ? 8.0 * area_or_zero(hm, A, B) * area_or_zero(hm, C, D) / (hm * hm) : 0.0;
  const double xp = xprime(X, mode);
  g.w_lambda_areas = -2.0 * cos_theta3(t, mode) * 8.0 * area_or_zero(xp, A, B) * area_or_zero(xp, C, D) / (xp * xp);

  const double fab = area_or_zero(X, A, B), fcd = area_or_zero(X, C, D);
  g.p_plus_mean =
      8.0 * std::sqrt(area_or_zero(X + 1, A, B) * fab * area_or_zero(X + 1, C, D) * fcd) / (X * (X + 1));
  g.p_minus_mean =
      X > 1.0 ? 8.0 * std::sqrt(area_or_zero(X - 1, A, B) * fab * area_or_zero(X - 1, C, D) * fcd) / (X * (X - 1))
              : 0.0;
  g.w_lambda_mean = -2.0 * cos_theta3(t, XPrime::Plain) * 8.0 * fab * fcd / (X * X);
  return g;
}

PotentialCurves potentials(const ScreenParams& params, PBarMode mode) {
  const auto tc = tridiag_coeffs(params);
  const std::size_t n = params.side();
  PotentialCurves out;
  for (std::size_t i = 0; i < n; ++i) {
    const double pp = tc.p_plus[i], pm = tc.p_minus(i);
    const double pbar = mode == PBarMode::Arithmetic ? 0.5 * (pp + pm) : std::sqrt(pp * pm);
    out.x.push_back(params.x_at(i).j());
    out.w_plus.push_back(tc.w[i] + 2.0 * std::abs(pbar));
    out.w_minus.push_back(tc.w[i] - 2.0 * std::abs(pbar));
  }
  return out;
}

FTransform f_transform(std::span<const double> u_row, const ScreenParams& params, TwoJ y) {
  const std::size_t n = params.side();
  if (u_row.size() != n) throw Error(ErrorCode::InvalidArgument, "row length does not match the screen");
  (void)params.y_index(y);
  FTransform out;
  out.f.resize(n);
  out.residual.resize(n);
  out.cos_theta3.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = Tetrahedron::from_point(params, params.x_at(i), y);
    const double r1 = heron_radicand(t.X, t.A, t.B), r2 = heron_radicand(t.X, t.C, t.D);
    if (r1 >= 0.0 && r2 >= 0.0) out.f[i] = std::sqrt(0.0625 * std::sqrt(r1 * r2)) / t.X * u_row[i];
    try {
      out.cos_theta3[i] = cos_theta3(t, XPrime::Plain);
    } catch (const Error&) {
    }
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (out.f[i - 1] && out.f[i] && out.f[i + 1] && out.cos_theta3[i]) {
      out.residual[i] = *out.f[i + 1] - 2.0 * *out.cos_theta3[i] * *out.f[i] + *out.f[i - 1];
    }
  }
  return out;
}

std::optional<std::pair<double, double>> classical_window(const ScreenParams& params, TwoJ y) {
  const double A = shifted(params.a), B = shifted(params.b), C = shifted(params.c), D = shifted(params.d);
  const double Y = shifted(y);
  const double lo = std::max(std::abs(A - B), std::abs(C - D));
  const double hi = std::min(A + B, C + D);
  if (!(hi > lo)) return std::nullopt;
  auto vsq = [&](double X) { return volume_sq_ld(A, B, C, D, X, Y); };

  const std::size_t samples = 8 * params.side() + 16;
  const double h = (hi - lo) / static_cast<double>(samples);
  std::optional<std::size_t> first, last;
  for (std::size_t i = 1; i < samples; ++i) {
    if (vsq(lo + h * static_cast<double>(i)) > 0.0) {
      if (!first) first = i;
      last = i;
    }
  }
  if (!first) return std::nullopt;

  auto bisect = [&](double neg, double pos) {
    for (int it = 0; it < 200 && std::abs(pos - neg) > 1e-13 * std::max(1.0, std::abs(pos)); ++it) {
      const double mid = 0.5 * (neg + pos);
      (vsq(mid) > 0.0 ? pos : neg) = mid;
    }
    return 0.5 * (neg + pos);
  };
  const double left = bisect(lo + h * static_cast<double>(*first - 1), lo + h * static_cast<double>(*first));
  const double right = bisect(lo + h * static_cast<double>(*last + 1), lo + h * static_cast<double>(*last));
  return std::pair{left, right};
}

}  // namespace spinscreen
