#include "spinscreen/semiclassics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "spinscreen/error.hpp"
#include "spinscreen/parallel.hpp"

namespace spinscreen {

namespace {

constexpr double kPi = std::numbers::pi;

double theta_at(const ScreenParams& params, double X, double Y) {
  const Tetrahedron t{shifted(params.a), shifted(params.b), shifted(params.c), shifted(params.d), X, Y};
  return std::acos(std::clamp(cos_theta3(t, XPrime::Plain), -1.0, 1.0));
}

template <class F>
double simpson(F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double integrate(F&& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

// Exterior angle at edge (i, j) of a tetrahedron given by its 4×4 edge table.
double edge_angle(const std::array<std::array<double, 4>, 4>& L, int i, int j, double volume) {
  int k = -1, l = -1;
  for (int m = 0; m < 4; ++m) {
    if (m == i || m == j) continue;
    (k < 0 ? k : l) = m;
  }
  const double e = L[i][j], ep = L[k][l];
  const double A = L[i][k], B = L[j][k], C = L[j][l], D = L[i][l];
  const double e2 = e * e, A2 = A * A, B2 = B * B, C2 = C * C, D2 = D * D;
  const double num = 2 * e2 * ep * ep - e2 * (-e2 + D2 + C2) - B2 * (e2 + D2 - C2) - A2 * (e2 - D2 + C2);
  const double r1 = heron_radicand(e, B, A), r2 = heron_radicand(e, D, C);
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error(ErrorCode::DegenerateFace, "face adjacent to an edge has no area");
  const double den = std::sqrt(r1 * r2);
  const double cs = num / den;
  const double sn = 24.0 * volume * e / den;
  return std::atan2(sn, cs);
}

}  // namespace

double local_momentum(TwoJ x, TwoJ y, const ScreenParams& params) {
  (void)params.x_index(x);
  (void)params.y_index(y);
  double c = 0.0;
  try {
    c = cos_theta3(Tetrahedron::from_point(params, x, y), XPrime::Plain);
  } catch (const Error& e) {
    throw Error(ErrorCode::OutsideDomain, e.what());
  }
  if (c > 1.0 || c < -1.0) throw Error(ErrorCode::OutsideDomain, "|cos θ3| exceeds 1");
  return std::sqrt(2.0 - 2.0 * c);
}

BohrSommerfeld bohr_sommerfeld(TwoJ y, const ScreenParams& params) {
  (void)params.y_index(y);
  const auto window = classical_window(params, y);
  if (!window) throw Error(ErrorCode::NoClassicalWindow, "row y=" + std::to_string(y.twice()) + "/2 is forbidden");
  const double Y = shifted(y);
  BohrSommerfeld out;
  out.x_lo = window->first;
  out.x_hi = window->second;
  auto theta = [&](double X) { return theta_at(params, X, Y); };
  out.action = out.x_hi > out.x_lo ? integrate(theta, out.x_lo, out.x_hi, 1e-11) : 0.0;
  out.n_estimate = out.action / kPi - 0.5;

  // Lattice trapezoid of p, interpolating p² linearly to the turning points.
  const std::size_t n = params.side();
  std::vector<double> c(n, NAN);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      c[i] = cos_theta3(Tetrahedron::from_point(params, params.x_at(i), y), XPrime::Plain);
    } catch (const Error&) {
    }
  }
  auto p = [](double cs) { return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::clamp(cs, -1.0, 1.0))); };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double c0 = c[i], c1 = c[i + 1];
    if (std::isnan(c0) || std::isnan(c1)) continue;
    const double s0 = 1.0 - c0 * c0, s1 = 1.0 - c1 * c1;
    if (s0 >= 0 && s1 >= 0) {
      acc += 0.5 * (p(c0) + p(c1));
    } else if (s0 >= 0 && s1 < 0) {
      const double t = s0 / (s0 - s1);
      acc += 0.5 * t * (p(c0) + p(c1 > 0 ? 1.0 : -1.0));
    } else if (s0 < 0 && s1 >= 0) {
      const double t = s1 / (s1 - s0);
      acc += 0.5 * t * (p(c1) + p(c0 > 0 ? 1.0 : -1.0));
    }
  }
  out.lattice_action = 2.0 * acc;
  return out;
}

DihedralAngles dihedral_angles(const Tetrahedron& t) {
  const double v2 = volume_sq_poly(t);
  if (!(v2 > 0.0)) throw Error(ErrorCode::OutsideDomain, "tetrahedron has no volume");
  const double V = std::sqrt(v2);
  // Vertices 0..3 with X = 01, A = 02, D = 03, B = 12, C = 13, Y = 23.
  std::array<std::array<double, 4>, 4> L{};
  auto set = [&](int i, int j, double v) { L[i][j] = L[j][i] = v; };
  set(0, 1, t.X);
  set(0, 2, t.A);
  set(0, 3, t.D);
  set(1, 2, t.B);
  set(1, 3, t.C);
  set(2, 3, t.Y);
  DihedralAngles out;
  out.volume = V;
  out.theta1 = edge_angle(L, 0, 2, V);
  out.theta2 = edge_angle(L, 1, 2, V);
  out.theta3 = edge_angle(L, 0, 1, V);
  out.eta1 = edge_angle(L, 1, 3, V);
  out.eta2 = edge_angle(L, 0, 3, V);
  out.eta3 = edge_angle(L, 2, 3, V);
  return out;
}

PRAmplitude pr_amplitude(TwoJ x, TwoJ y, const ScreenParams& params) {
  (void)params.x_index(x);
  (void)params.y_index(y);
  const auto t = Tetrahedron::from_point(params, x, y);
  DihedralAngles ang;
  try {
    ang = dihedral_angles(t);
  } catch (const Error& e) {
    throw Error(ErrorCode::OutsideDomain, e.what());
  }
  PRAmplitude out;
  out.phase = t.A * ang.theta1 + t.B * ang.theta2 + t.X * ang.theta3 + t.C * ang.eta1 + t.D * ang.eta2 +
              t.Y * ang.eta3 + 0.25 * kPi;
  out.envelope = 1.0 / std::sqrt(12.0 * kPi * ang.volume);
  out.sixj = out.envelope * std::cos(out.phase);
  out.u = out.sixj * std::sqrt((x.twice() + 1.0) * (y.twice() + 1.0));
  out.cos_theta3 = std::cos(ang.theta3);
  out.caustic_proximity = std::abs(out.cos_theta3) > 0.9;
  return out;
}

PRComparison pr_compare(const ScreenParams& params, const Screen& exact) {
  if (!(exact.params() == params)) throw Error(ErrorCode::InvalidArgument, "screen parameters do not match");
  const std::size_t n = params.side();
  PRComparison out;
  out.side = n;
  out.points.resize(n * n);
  const double A = shifted(params.a), B = shifted(params.b), C = shifted(params.c), D = shifted(params.d);

  // Middle half of the classical window, per row in X and per column in Y.
  auto middle = [](double lo, double hi) { return std::pair{lo + 0.25 * (hi - lo), hi - 0.25 * (hi - lo)}; };
  std::vector<std::optional<std::pair<double, double>>> x_mid(n), y_mid(n);
  parallel_for(n, [&](std::size_t i) {
    if (auto w = classical_window(params, params.y_at(i))) x_mid[i] = middle(w->first, w->second);
    auto [lo, hi] = caustic_y(A, B, C, D, shifted(params.x_at(i)));
    if (lo && hi) y_mid[i] = middle(*lo, *hi);
  });

  parallel_for(n, [&](std::size_t iy) {
    for (std::size_t ix = 0; ix < n; ++ix) {
      auto& pt = out.points[iy * n + ix];
      pt.x = params.x_at(ix);
      pt.y = params.y_at(iy);
      pt.exact = exact(ix, iy) / std::sqrt((pt.x.twice() + 1.0) * (pt.y.twice() + 1.0));
      try {
        pt.estimate = pr_amplitude(pt.x, pt.y, params);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OutsideDomain && e.code() != ErrorCode::DegenerateFace) throw;
        continue;
      }
      const auto& est = *pt.estimate;
      pt.abs_error = std::abs(est.sixj - pt.exact);
      if (pt.exact != 0.0) pt.rel_error = *pt.abs_error / std::abs(pt.exact);
      const bool measurable = std::abs(pt.exact) >= 0.05 * est.envelope;
      const double X = shifted(pt.x), Y = shifted(pt.y);
      const bool inside = x_mid[iy] && y_mid[ix] && X >= x_mid[iy]->first && X <= x_mid[iy]->second &&
                          Y >= y_mid[ix]->first && Y <= y_mid[ix]->second;
      pt.interior = inside && measurable && std::abs(est.cos_theta3) <= 0.5;
      pt.caustic_band = measurable && std::abs(est.cos_theta3) > 0.9;
    }
  });

  std::size_t agree = 0;
  for (const auto& pt : out.points) {
    if (!pt.estimate) {
      ++out.forbidden;
      continue;
    }
    if (pt.interior) {
      ++out.interior_count;
      out.interior_max_rel = std::max(out.interior_max_rel, pt.rel_error.value_or(0.0));
      if ((pt.estimate->sixj > 0) == (pt.exact > 0)) ++agree;
    }
    if (pt.caustic_band) {
      ++out.band_count;
      out.band_max_rel = std::max(out.band_max_rel, pt.rel_error.value_or(0.0));
    }
  }
  out.interior_sign_agreement = out.interior_count ? static_cast<double>(agree) / out.interior_count : 0.0;
  return out;
}

}  // namespace spinscreen
