#include "spinscreen/exact_oracle.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "spinscreen/combinatorics.hpp"
#include "spinscreen/error.hpp"
#include "spinscreen/parallel.hpp"

namespace spinscreen {

namespace {

struct RacahParts {
  mpq_class sum;
  PrimePowers radicand;
};

// Δ(p q r)² = (p+q−r)!(p−q+r)!(−p+q+r)!/(p+q+r+1)!, arguments in TwoJ units.
void accumulate_triangle(PrimePowers& pp, int p, int q, int r) {
  accumulate_factorial(pp, static_cast<std::uint32_t>((p + q - r) / 2), +1);
  accumulate_factorial(pp, static_cast<std::uint32_t>((p - q + r) / 2), +1);
  accumulate_factorial(pp, static_cast<std::uint32_t>((-p + q + r) / 2), +1);
  accumulate_factorial(pp, static_cast<std::uint32_t>((p + q + r) / 2 + 1), -1);
}

RacahParts racah_parts(const SixJArgs& s) {
  const int a = s.a.twice(), b = s.b.twice(), x = s.x.twice();
  const int c = s.c.twice(), d = s.d.twice(), y = s.y.twice();

  RacahParts out;
  accumulate_triangle(out.radicand, a, b, x);
  accumulate_triangle(out.radicand, a, d, y);
  accumulate_triangle(out.radicand, c, b, y);
  accumulate_triangle(out.radicand, c, d, x);

  const std::array<long, 4> alpha{(a + b + x) / 2, (a + d + y) / 2, (c + b + y) / 2, (c + d + x) / 2};
  const std::array<long, 3> beta{(a + b + c + d) / 2, (b + x + d + y) / 2, (x + a + y + c) / 2};
  const long zmin = *std::max_element(alpha.begin(), alpha.end());
  const long zmax = *std::min_element(beta.begin(), beta.end());

  auto& fc = FactorialCache::instance();
  // Leading term (−1)^z (z+1)! / [Π (z−α)! Π (β−z)!] at z = zmin.
  mpz_class den = 1;
  for (long al : alpha) den *= fc.factorial(static_cast<std::uint32_t>(zmin - al));
  for (long be : beta) den *= fc.factorial(static_cast<std::uint32_t>(be - zmin));
  mpq_class lead(fc.factorial(static_cast<std::uint32_t>(zmin + 1)), den);
  if (zmin % 2 != 0) lead = -lead;

  // Remaining terms through the ratio t(z+1)/t(z), folded Horner-style from
  // the top so only small-integer products are formed:
  //   Σ t = t(zmin) · (1 + r0 (1 + r1 (1 + ...)))
  mpz_class acc_num = 1, acc_den = 1;
  for (long z = zmax - 1; z >= zmin; --z) {
    mpz_class rn = -(z + 2);
    for (long be : beta) rn *= (be - z);
    mpz_class rd = 1;
    for (long al : alpha) rd *= (z + 1 - al);
    acc_num = rd * acc_den + rn * acc_num;
    acc_den *= rd;
  }
  out.sum = lead * mpq_class(acc_num, acc_den);
  out.sum.canonicalize();
  return out;
}

}  // namespace

ExactValue sixj_exact(const SixJArgs& args) {
  if (!args.admissible()) return {};
  auto parts = racah_parts(args);
  return ExactValue::from_prime_powers(parts.sum, parts.radicand);
}

double sixj(const SixJArgs& args) { return sixj_exact(args).to_double(); }

ExactValue u_exact(TwoJ x, TwoJ y, const ScreenParams& params) {
  (void)params.x_index(x);
  (void)params.y_index(y);
  const auto args = params.args(x, y);
  if (!args.admissible()) return {};
  auto parts = racah_parts(args);
  accumulate_integer(parts.radicand, static_cast<std::uint64_t>(x.twice() + 1), +1);
  accumulate_integer(parts.radicand, static_cast<std::uint64_t>(y.twice() + 1), +1);
  return ExactValue::from_prime_powers(parts.sum, parts.radicand);
}

namespace {

// Edmonds' closed forms for {a b c; 1 e f}, all arguments in TwoJ units.
// Sign (−1)^s with s = a + b + c.
ExactValue unit_form(int kind, int A, int B, int C) {
  const long long s = (A + B + C) / 2;
  const int sign = (s % 2 == 0) ? 1 : -1;
  const long long a2 = A, b2 = B, c2 = C;  // 2a, 2b, 2c
  switch (kind) {
    case 1:  // {a b c; 1 c−1 b−1}
      return ExactValue::sqrt_of_ratio(sign, {s, s + 1, s - a2 - 1, s - a2},
                                       {b2 - 1, b2, b2 + 1, c2 - 1, c2, c2 + 1});
    case 2:  // {a b c; 1 c−1 b}
      return ExactValue::sqrt_of_ratio(sign, {2, s + 1, s - a2, s - b2, s - c2 + 1},
                                       {b2, b2 + 1, b2 + 2, c2 - 1, c2, c2 + 1});
    case 3:  // {a b c; 1 c−1 b+1}
      return ExactValue::sqrt_of_ratio(sign, {s - b2 - 1, s - b2, s - c2 + 1, s - c2 + 2},
                                       {b2 + 1, b2 + 2, b2 + 3, c2 - 1, c2, c2 + 1});
    default: {  // {a b c; 1 c b}
      // 2[b(b+1) + c(c+1) − a(a+1)] = [B(B+2) + C(C+2) − A(A+2)] / 2
      const long long twice_num = b2 * (b2 + 2) + c2 * (c2 + 2) - a2 * (a2 + 2);
      if (twice_num == 0) return {};
      auto root = ExactValue::sqrt_of_ratio(1, {1}, {b2, b2 + 1, b2 + 2, c2, c2 + 1, c2 + 2});
      root *= mpq_class(static_cast<long>(-sign * twice_num), 2L);
      return root;
    }
  }
}

}  // namespace

ExactValue sixj_unit(const SixJArgs& args) {
  // rows[0] = upper (a b x), rows[1] = lower (c d y)
  std::array<std::array<int, 3>, 2> m{{{args.a.twice(), args.b.twice(), args.x.twice()},
                                       {args.c.twice(), args.d.twice(), args.y.twice()}}};
  int row = -1, col = -1;
  for (int r = 1; r >= 0 && row < 0; --r) {
    for (int k = 0; k < 3; ++k) {
      if (m[r][k] == 2) {
        row = r;
        col = k;
        break;
      }
    }
  }
  if (row < 0) throw Error(ErrorCode::PatternError, args.to_string() + " has no unit entry");
  if (!args.admissible()) return {};

  // Column permutations and upper/lower exchange in two columns are
  // symmetries; bring the unit entry to the lower-left corner.
  if (col != 0) {
    for (int r = 0; r < 2; ++r) std::swap(m[r][0], m[r][col]);
  }
  if (row == 0) {
    std::swap(m[0][0], m[1][0]);
    std::swap(m[0][1], m[1][1]);
  }
  const int A = m[0][0];
  const std::array<std::array<int, 4>, 4> variants{{
      {m[0][1], m[0][2], m[1][1], m[1][2]},
      {m[0][2], m[0][1], m[1][2], m[1][1]},
      {m[1][1], m[1][2], m[0][1], m[0][2]},
      {m[1][2], m[1][1], m[0][2], m[0][1]},
  }};
  for (const auto& [B, C, E, F] : variants) {
    const int d1 = E - C, d2 = F - B;
    if (d1 == -2 && d2 == -2) return unit_form(1, A, B, C);
    if (d1 == -2 && d2 == 0) return unit_form(2, A, B, C);
    if (d1 == -2 && d2 == 2) return unit_form(3, A, B, C);
    if (d1 == 0 && d2 == 0) return unit_form(4, A, B, C);
  }
  throw Error(ErrorCode::PatternError, "unreachable unit-argument shape for " + args.to_string());
}

Screen screen_oracle(const ScreenParams& params) {
  Screen screen(params, Method::Oracle);
  const std::size_t n = screen.side();
  parallel_for(n * n, [&](std::size_t k) {
    const std::size_t iy = k / n, ix = k % n;
    screen(ix, iy) = u_exact(params.x_at(ix), params.y_at(iy), params).to_double();
  });
  screen.diagnostics().orthonormality_defect = orthonormality_defect(screen);
  return screen;
}

}  // namespace spinscreen
