#include <cmath>
#include <random>

#include "doctest.h"
#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/ninej.hpp"

using namespace spinscreen;

namespace {

NineJArgs nine(std::array<int, 9> v) {
  return {TwoJ(v[0]), TwoJ(v[1]), TwoJ(v[2]), TwoJ(v[3]), TwoJ(v[4]), TwoJ(v[5]), TwoJ(v[6]), TwoJ(v[7]), TwoJ(v[8])};
}

}  // namespace

TEST_CASE("tabulated 9j values") {
  CHECK(ninej_exact(nine({2, 2, 0, 2, 2, 0, 0, 0, 0})).equals(mpq_class(1, 3)));
  CHECK(ninej_exact(nine({4, 2, 2, 2, 4, 2, 2, 2, 4})).equals(mpq_class(23, 450)));
  CHECK(ninej_exact(nine({1, 1, 2, 1, 1, 2, 2, 2, 0})).equals(mpq_class(-1, 18)));
  CHECK(ninej_exact(nine({4, 4, 4, 4, 4, 4, 4, 4, 4})).equals(mpq_class(41, 2450)));
  CHECK(ninej_exact(nine({3, 2, 1, 4, 3, 1, 1, 1, 2})).equals(mpq_class(-1, 24)));
  CHECK(ninej_exact(nine({2, 2, 2, 2, 2, 2, 2, 2, 2})).is_zero());
  CHECK(ninej_oracle(nine({2, 2, 6, 2, 2, 2, 2, 2, 2})) == 0.0);
  CHECK(nine({2, 2, 0, 2, 2, 0, 0, 0, 0}).to_string() == "{1 1 0; 1 1 0; 0 0 0}");
}

TEST_CASE("h = 0 reduces to a 6j symbol") {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> u(0, 10);
  int n = 0;
  while (n < 200) {
    const int a = u(rng), b = u(rng), c = u(rng), d = u(rng), f = u(rng), g = u(rng);
    const auto args = nine({a, b, c, d, b, f, g, 0, g});
    if (!args.admissible()) continue;
    ++n;
    const int phase = (a + b + f + g) / 2 % 2 ? -1 : 1;
    const double want = phase / std::sqrt((b + 1.0) * (g + 1.0)) *
                        sixj({TwoJ(a), TwoJ(b), TwoJ(c), TwoJ(f), TwoJ(g), TwoJ(d)});
    CHECK(ninej_oracle(args) == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("two-variable recurrence") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> u(0, 8), pos(1, 8);
  int n = 0;
  double literal = 0;
  while (n < 150) {
    const auto args = nine({u(rng), u(rng), pos(rng), pos(rng), u(rng), u(rng), u(rng), u(rng), u(rng)});
    if (!args.admissible()) continue;
    ++n;
    CHECK(ninej_residual(args).relative < 1e-12);
    literal = std::max(literal, ninej_residual(args, BOrder::Literal).relative);
  }
  CHECK(literal > 1e-3);
  CHECK_THROWS_AS(ninej_residual(nine({2, 2, 0, 2, 2, 0, 0, 0, 0})), Error);
}

TEST_CASE("recurrence coefficients") {
  const auto c = ninej_coeffs(1, 1, 1, 1, 1);
  CHECK(c.B == doctest::Approx(4.0));
  CHECK(c.A == doctest::Approx(8.0));
  CHECK(ninej_coeffs(3, 1, 1, 1, 1).A == 0.0);
}

TEST_CASE("h = 0 recurrence matches the five-term coefficients") {
  const auto r = reduction_check(screen_ranges(6, 10, 14, 14));
  CHECK(r.stencils > 0);
  CHECK(r.max_ratio_deviation < 1e-9);
  CHECK(r.mismatched_zeros == 0);
  const auto big = reduction_check(screen_ranges(60, 90, 120, 110), 100);
  CHECK(big.stencils == 100);
  CHECK(big.max_ratio_deviation < 1e-9);
}
