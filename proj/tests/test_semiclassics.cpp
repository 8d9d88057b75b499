#include <cmath>

#include "doctest.h"
#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/semiclassics.hpp"

using namespace spinscreen;

TEST_CASE("dihedral angles of a regular tetrahedron") {
  const auto d = dihedral_angles(Tetrahedron{4, 4, 4, 4, 4, 4});
  const double want = std::acos(-1.0 / 3.0);
  for (double t : {d.theta1, d.theta2, d.theta3, d.eta1, d.eta2, d.eta3}) CHECK(t == doctest::Approx(want).epsilon(1e-13));
  CHECK(d.volume == doctest::Approx(64.0 / std::sqrt(72.0)).epsilon(1e-13));
  CHECK_THROWS_AS(dihedral_angles(Tetrahedron{1, 1, 1, 1, 1, 5}), Error);
}

TEST_CASE("local momentum") {
  const auto p = screen_ranges(60, 90, 120, 110);
  const double m = local_momentum(TwoJ(90), TwoJ(110), p);
  CHECK(m > 0);
  CHECK(m <= 2.0);
  CHECK_THROWS_AS(local_momentum(p.x_min, p.y_min, p), Error);
}

TEST_CASE("bohr-sommerfeld ladder mid-screen") {
  const auto p = screen_ranges(600, 900, 1200, 1100);
  for (std::size_t iy = 295; iy < 305; ++iy) {
    const auto a = bohr_sommerfeld(p.y_at(iy), p), b = bohr_sommerfeld(p.y_at(iy + 1), p);
    CHECK(a.n_estimate - b.n_estimate == doctest::Approx(1.0).epsilon(0.1));
    CHECK(a.x_lo < a.x_hi);
    CHECK(a.action > 0);
  }
}

TEST_CASE("ponzano-regge estimate in the classical interior") {
  const auto p = screen_ranges(60, 90, 120, 110);
  const TwoJ x(90), y(110);
  const auto est = pr_amplitude(x, y, p);
  const double exact = sixj(p.args(x, y));
  CHECK(std::abs(est.sixj - exact) < 0.05 * est.envelope);
  CHECK(est.u == doctest::Approx(est.sixj * std::sqrt(91.0 * 111.0)));
  CHECK_THROWS_AS(pr_amplitude(p.x_min, p.y_min, p), Error);

  const auto c = pr_compare(p, screen_oracle(p));
  CHECK(c.points.size() == p.side() * p.side());
  CHECK(c.interior_count > 100);
  CHECK(c.interior_max_rel < 0.05);
  CHECK(c.interior_sign_agreement >= 0.99);
  CHECK(c.band_max_rel > c.interior_max_rel);
  CHECK(c.forbidden > 0);
}
