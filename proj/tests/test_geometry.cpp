#include <cmath>
#include <random>

#include "doctest.h"
#include "spinscreen/error.hpp"
#include "spinscreen/geometry.hpp"
#include "spinscreen/recursion.hpp"

using namespace spinscreen;

TEST_CASE("triangle areas") {
  CHECK(heron_area(3, 4, 5) == doctest::Approx(6.0));
  CHECK(lambda_quartic(3, 4, 5) == doctest::Approx(-16.0 * 36.0));
  CHECK(heron_radicand(1, 1, 3) < 0);
  CHECK_THROWS_AS(heron_area(1, 1, 3), Error);
}

TEST_CASE("regular tetrahedron") {
  const Tetrahedron t{1, 1, 1, 1, 1, 1};
  CHECK(volume_sq(t) == doctest::Approx(1.0 / 72.0).epsilon(1e-14));
  CHECK(volume_sq_gram(t) == doctest::Approx(1.0 / 72.0).epsilon(1e-14));
  CHECK(volume_sq_poly(t) == doctest::Approx(1.0 / 72.0).epsilon(1e-14));
  CHECK(cos_theta3(t, XPrime::Plain) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(cos_theta3_magnitude(t, XPrime::Plain) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(sin_theta3(t, XPrime::Plain) == doctest::Approx(std::sqrt(8.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("three volume formulas agree on random tetrahedra") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> len(1.0, 100.0);
  int n = 0;
  while (n < 500) {
    const Tetrahedron t{len(rng), len(rng), len(rng), len(rng), len(rng), len(rng)};
    const double v = volume_sq(t);
    if (v <= 0) continue;
    ++n;
    CHECK(volume_sq_gram(t) == doctest::Approx(v).epsilon(1e-9));
    CHECK(volume_sq_poly(t) == doctest::Approx(v).epsilon(1e-9));
  }
}

TEST_CASE("ridge and caustics") {
  const double A = 30.5, B = 45.5, C = 60.5, D = 55.5, X = 40.5;
  const auto r = ridge_y(A, B, C, D, X);
  const auto vm = volume_max(A, B, C, D, X);
  REQUIRE(r);
  REQUIRE(vm);
  CHECK(std::sqrt(volume_sq({A, B, C, D, X, *r})) == doctest::Approx(*vm).epsilon(1e-12));
  const auto [lo, hi] = caustic_y(A, B, C, D, X);
  REQUIRE(lo);
  REQUIRE(hi);
  CHECK(*lo < *r);
  CHECK(*r < *hi);
  CHECK(std::abs(volume_sq_poly({A, B, C, D, X, *lo})) < 1e-9 * *vm * *vm);
  CHECK(std::abs(volume_sq_poly({A, B, C, D, X, *hi})) < 1e-9 * *vm * *vm);
  for (double Y : {*lo + 1.0, *r, *hi - 1.0}) CHECK(volume_sq_poly({A, B, C, D, X, Y}) > 0);
  CHECK(volume_sq_poly({A, B, C, D, X, *hi + 1.0}) < 0);

  const auto [xlo, xhi] = caustic_x(A, B, C, D, 55.5);
  REQUIRE(xlo);
  REQUIRE(xhi);
  CHECK(std::abs(volume_sq_poly({A, B, C, D, *xlo, 55.5})) < 1e-9 * *vm * *vm);
}

TEST_CASE("curves are invariant under regge conjugation") {
  const auto p = screen_ranges(60, 90, 120, 110);
  const auto a = ridges_and_caustics(p, 2), b = ridges_and_caustics(regge_conjugate(p), 2);
  REQUIRE(a.X.size() == b.X.size());
  for (std::size_t i = 0; i < a.X.size(); ++i) {
    REQUIRE(a.y_z_minus[i].has_value() == b.y_z_minus[i].has_value());
    if (a.y_z_minus[i]) CHECK(std::abs(*a.y_z_minus[i] - *b.y_z_minus[i]) <= 1e-12);
    if (a.v_max[i]) CHECK(std::abs(*a.v_max[i] - *b.v_max[i]) <= 1e-12 * *a.v_max[i]);
  }
}

TEST_CASE("geometric coefficients track the exact ones mid-screen") {
  const auto p = screen_ranges(60, 90, 120, 110);
  const auto tc = tridiag_coeffs(p);
  const std::size_t ix = 30, iy = 30;
  const auto g = geometric_coeffs(p.x_at(ix), p.y_at(iy), p);
  CHECK(g.p_plus_exact == doctest::Approx(tc.p_plus[ix]).epsilon(1e-12));
  CHECK(std::abs(g.p_plus_areas / g.p_plus_exact - 1) < 1e-3);
  CHECK(std::abs(g.p_plus_mean / g.p_plus_exact - 1) < 1e-3);
  CHECK(std::abs(g.w_lambda_areas - g.w_lambda_exact) < 1e-3 * (std::abs(tc.w[ix]) + std::abs(tc.lambda[iy])));
}

TEST_CASE("degenerate and forbidden points") {
  const Tetrahedron flat{1, 1, 1, 1, 2.5, 1};
  CHECK_THROWS_AS(cos_theta3(flat, XPrime::Plain), Error);
  const Tetrahedron forbidden{30.5, 45.5, 60.5, 55.5, 40.5, 200};
  CHECK_THROWS_AS(sin_theta3(forbidden), Error);
}

TEST_CASE("potentials bracket the spectrum mid-screen") {
  const auto p = screen_ranges(60, 90, 120, 110);
  const auto ar = potentials(p, PBarMode::Arithmetic);
  const auto ge = potentials(p, PBarMode::Geometric);
  REQUIRE(ar.x.size() == p.side());
  for (std::size_t i = 0; i < p.side(); ++i) {
    CHECK(ar.w_minus[i] <= ar.w_plus[i]);
    CHECK(ge.w_minus[i] <= ge.w_plus[i]);
  }
}

TEST_CASE("classical window and the f transform") {
  const auto p = screen_ranges(600, 900, 1200, 1100);
  const TwoJ y(1100);
  const auto w = classical_window(p, y);
  REQUIRE(w);
  CHECK(w->first < w->second);
  CHECK(volume_sq_poly(Tetrahedron{300.5, 450.5, 600.5, 550.5, 0.5 * (w->first + w->second), 550.5}) > 0);
}
