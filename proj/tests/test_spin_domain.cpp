#include <random>

#include "doctest.h"
#include "spinscreen/error.hpp"
#include "spinscreen/spin_domain.hpp"

using namespace spinscreen;

TEST_CASE("triads") {
  CHECK(triad_ok(2, 2, 2));
  CHECK(triad_ok(1, 1, 0));
  CHECK_FALSE(triad_ok(1, 1, 1));  // half-integer sum
  CHECK_FALSE(triad_ok(2, 2, 6));  // triangle
  CHECK(triad_ok(TwoJ(60), TwoJ(90), TwoJ(30)));
  CHECK_THROWS_AS(TwoJ(-1), Error);
}

TEST_CASE("screen ranges of the small and large example screens") {
  const auto p = screen_ranges(60, 90, 120, 110);
  CHECK(p.x_min.twice() == 30);
  CHECK(p.x_max.twice() == 150);
  CHECK(p.y_min.twice() == 50);
  CHECK(p.y_max.twice() == 170);
  CHECK(p.side() == 61);
  CHECK(p.s.twice() == 190);
  CHECK(p.x_index(TwoJ(32)) == 1);
  CHECK_THROWS_AS(p.x_index(TwoJ(31)), Error);
  CHECK_THROWS_AS(p.y_index(TwoJ(172)), Error);

  const auto q = screen_ranges(600, 900, 1200, 1100);
  CHECK(q.side() == 601);
  CHECK(q.x_min.twice() == 300);
  CHECK(q.y_max.twice() == 1700);
}

TEST_CASE("empty and odd screens are rejected") {
  CHECK_THROWS_AS(screen_ranges(1, 2, 2, 2), Error);
  try {
    screen_ranges(0, 20, 2, 30);
    FAIL("expected EmptyScreen");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyScreen);
  }
  try {
    regge_conjugate(TwoJ(1), TwoJ(2), TwoJ(2), TwoJ(2));
    FAIL("expected ParityError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParityError);
  }
}

TEST_CASE("half-integer screen") {
  const auto p = screen_ranges(1, 3, 3, 3);
  CHECK(p.side() == 2);
  CHECK(p.x_min.twice() == 2);
  CHECK(p.y_min.twice() == 2);
  CHECK(p.y_max.twice() == 4);
}

TEST_CASE("regge conjugation") {
  const auto r = regge_conjugate(TwoJ(60), TwoJ(90), TwoJ(120), TwoJ(110));
  CHECK(r[0].twice() == 130);
  CHECK(r[1].twice() == 100);
  CHECK(r[2].twice() == 70);
  CHECK(r[3].twice() == 80);

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> u(0, 60);
  int tested = 0;
  while (tested < 200) {
    const int a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    ScreenParams p;
    try {
      p = screen_ranges(a, b, c, d);
    } catch (const Error&) {
      continue;
    }
    ++tested;
    const auto rp = regge_conjugate(p);
    CHECK(regge_conjugate(rp) == p);
    CHECK(rp.x_min == p.x_min);
    CHECK(rp.x_max == p.x_max);
    CHECK(rp.y_min == p.y_min);
    CHECK(rp.y_max == p.y_max);
  }
}

TEST_CASE("canonical form") {
  const auto c1 = canonicalize(TwoJ(60), TwoJ(90), TwoJ(120), TwoJ(110));
  CHECK(c1.params.quad() == std::array{60, 90, 120, 110});
  CHECK_FALSE(c1.xy_swapped);
  CHECK_FALSE(c1.regge_applied);

  const auto c2 = canonicalize(TwoJ(120), TwoJ(90), TwoJ(60), TwoJ(110));
  CHECK(c2.params.quad() == std::array{60, 90, 120, 110});
  CHECK(c2.xy_swapped);
  const auto [x, y] = c2.map_point(TwoJ(40), TwoJ(70));
  CHECK(x.twice() == 70);
  CHECK(y.twice() == 40);

  const auto c3 = canonicalize(TwoJ(130), TwoJ(100), TwoJ(70), TwoJ(80));
  CHECK(c3.regge_applied);
  CHECK(c3.params.quad() == std::array{60, 90, 120, 110});

  const auto c4 = canonicalize(TwoJ(120), TwoJ(110), TwoJ(60), TwoJ(90));
  CHECK(c4.params.quad() == std::array{60, 90, 120, 110});
  CHECK_FALSE(c4.xy_swapped);

  const auto w = canonical_c_window(c1.params);
  CHECK(w.first == 80);
  CHECK(w.second == 140);
}

TEST_CASE("screen size and canonical invariants on random quadruples") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> u(0, 80);
  int tested = 0;
  while (tested < 1000) {
    const int a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    ScreenParams p;
    try {
      p = screen_ranges(a, b, c, d);
    } catch (const Error&) {
      continue;
    }
    ++tested;
    CHECK(p.x_max.twice() - p.x_min.twice() == p.y_max.twice() - p.y_min.twice());
    const int s = p.s.twice();
    const int m = std::min({a, b, c, d, s - a, s - b, s - c, s - d});
    CHECK(p.two_kappa.twice() == 2 * m);
    const auto cf = canonicalize(p);
    const auto q = cf.params;
    CHECK(q.a <= q.b);
    CHECK(q.b <= q.d);
    CHECK(q.a.twice() == m);
    CHECK(canonicalize(q).params == q);
    CHECK(q.side() == p.side());
  }
}
