#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/five_term.hpp"
#include "spinscreen/parallel.hpp"
#include "spinscreen/recursion.hpp"
#include "spinscreen/tridiagonal.hpp"

using namespace spinscreen;

TEST_CASE("tridiagonal eigenvalues of the discrete Laplacian") {
  const std::size_t n = 12;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const auto r = tridiagonal_eigen(d, e);
  for (std::size_t k = 0; k < n; ++k) {
    const double want = 2.0 - 2.0 * std::cos(M_PI * static_cast<double>(k + 1) / static_cast<double>(n + 1));
    CHECK(r.values[k] == doctest::Approx(want).epsilon(1e-13));
  }
  double dot = 0;
  for (std::size_t i = 0; i < n; ++i) dot += r.vector(0)[i] * r.vector(1)[i];
  CHECK(std::abs(dot) < 1e-14);
}

TEST_CASE("coefficients") {
  const auto p = screen_ranges(60, 90, 120, 110);
  CHECK(p_plus(p, p.x_max.j()) == 0.0);
  CHECK(p_plus(p, p.x_min.j() - 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(lambda_coeff(p, 25) == doctest::Approx(2.0 * (25 * 26 - 45 * 46 - 60 * 61)));
  CHECK(boundary_sign(p) == 1);
  CHECK(boundary_sign(screen_ranges(2, 2, 2, 4)) == -1);

  // x = 0 lies on the lattice when a = b and c = d; the limit exists there.
  const auto z = screen_ranges(6, 6, 8, 8);
  CHECK(z.x_min.twice() == 0);
  CHECK(std::isfinite(w_coeff(z, 0.0)));
}

TEST_CASE("spectrum of the three-term matrix") {
  const auto p = screen_ranges(60, 90, 120, 110);
  const auto tc = tridiag_coeffs(p);
  const auto r = tridiagonal_eigen(tc.w, std::span<const double>(tc.p_plus).first(p.side() - 1));
  auto lambda = tc.lambda;
  std::sort(lambda.begin(), lambda.end());
  for (std::size_t k = 0; k < lambda.size(); ++k) CHECK(r.values[k] == doctest::Approx(lambda[k]).epsilon(1e-10));
}

TEST_CASE("eigensolve, three-term and 2D screens match the oracle") {
  for (auto q : {std::array{60, 90, 120, 110}, std::array{1, 3, 3, 3}, std::array{7, 9, 11, 13}, std::array{20, 20, 30, 30}}) {
    CAPTURE(q[0]);
    const auto p = screen_ranges(q[0], q[1], q[2], q[3]);
    const auto o = screen_oracle(p);
    const auto e = screen_by_eigensolve(p);
    CHECK(max_abs_difference(o, e) < 1e-12);
    CHECK(e.diagnostics().orthonormality_defect < 1e-12);
    CHECK(e.diagnostics().max_eigenvalue_error < 1e-12);
    CHECK(max_abs_difference(o, screen_by_threeterm(p)) < 1e-12);
    const auto r = screen_by_2d(p);
    CHECK(max_abs_difference(o, r) < 1e-14);
    CHECK(r.diagnostics().precision_bits >= 128);
  }
}

TEST_CASE("single three-term row") {
  const auto p = screen_ranges(60, 90, 120, 110);
  const auto o = screen_oracle(p);
  const TwoJ y(110);
  const auto row = row_by_threeterm(y, p);
  const auto iy = p.y_index(y);
  for (std::size_t ix = 0; ix < p.side(); ++ix) CHECK(std::abs(row[ix] - o(ix, iy)) < 1e-12);
  CHECK(threeterm_residual(tridiag_coeffs(p), iy, row) < 1e-13);
}

TEST_CASE("2D recursion from double seeds") {
  const auto p = screen_ranges(16, 20, 24, 22);
  const auto o = screen_oracle(p);
  SeedRows seed;
  seed.first.assign(o.row(0).begin(), o.row(0).end());
  seed.second.assign(o.row(1).begin(), o.row(1).end());
  const auto s = screen_by_2d(p, seed);
  CHECK(max_abs_difference(o, s) < 1e-8);

  seed.first[3] += 0.1;
  CHECK_THROWS_AS(screen_by_2d(p, seed), Error);
  seed.first.pop_back();
  CHECK_THROWS_AS(screen_by_2d(p, seed), Error);
}

TEST_CASE("five-term relation holds on the exact screen") {
  const auto p = screen_ranges(20, 30, 40, 36);
  const auto o = screen_oracle(p);
  const auto fc = five_term_coeffs(p);
  for (std::size_t iy = 1; iy + 1 < p.side(); ++iy)
    for (std::size_t ix = 1; ix + 1 < p.side(); ++ix) CHECK(five_term_residual(fc, o, ix, iy) < 1e-12);
}

TEST_CASE("thread cap gives identical results") {
  const auto p = screen_ranges(40, 50, 60, 56);
  set_max_threads(1);
  const auto a = screen_by_2d(p);
  set_max_threads(0);
  const auto b = screen_by_2d(p);
  CHECK(max_abs_difference(a, b) == 0.0);
}
