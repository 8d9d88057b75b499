#include "spinscreen/five_term.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mpfr_scratch.hpp"
#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/parallel.hpp"

namespace spinscreen {

namespace {

using detail::MpfrScratch;

const TwoJ kOne{2};

// {p q r; 1 r s} with q possibly off the lattice (negative → zero).
ExactValue pattern(TwoJ p, int q2, TwoJ r, TwoJ s) {
  if (q2 < 0) return {};
  return sixj_unit(SixJArgs{p, TwoJ(q2), r, kOne, r, s});
}

std::array<ExactValue, 3> side_coeffs(TwoJ z, TwoJ u1, TwoJ v1, TwoJ u2, TwoJ v2) {
  std::array<ExactValue, 3> out;
  const int sign = z.twice() % 2 == 0 ? 1 : -1;
  for (int k = 0; k < 3; ++k) {
    const int zp = z.twice() + 2 * (k - 1);
    if (zp < 0) continue;
    auto prod = pattern(u1, zp, v1, z) * pattern(u2, zp, v2, z);
    if (prod.is_zero()) continue;
    out[k] = ExactValue::sqrt_of_ratio(sign, {zp + 1}, {1}) * prod;
  }
  return out;
}

using RowFill = std::function<void(std::size_t iy, std::vector<MpfrScratch>& row)>;

struct PassOutcome {
  double norm_defect = 0.0;
  std::size_t fallbacks = 0;
};

std::vector<MpfrScratch> make_row(std::size_t n, mpfr_prec_t prec) {
  std::vector<MpfrScratch> row;
  row.reserve(n);
  for (std::size_t i = 0; i < n; ++i) row.emplace_back(prec);
  return row;
}

// One sweep of the recursion at fixed precision. Rows 0 and 1 come from seed,
// as does any row whose pivot vanishes.
PassOutcome run_pass(const FiveTermCoeffs& fc, const RowFill& seed, mpfr_prec_t prec, Screen& out) {
  const auto& params = fc.params;
  const std::size_t n = params.side();
  PassOutcome outcome;

  auto prev = make_row(n, prec), cur = make_row(n, prec), next = make_row(n, prec);
  seed(0, prev);
  auto emit = [&](std::size_t iy, std::vector<MpfrScratch>& row) {
    auto dst = out.row(iy);
    for (std::size_t i = 0; i < n; ++i) dst[i] = mpfr_get_d(row[i], MPFR_RNDN);
  };
  emit(0, prev);
  if (n == 1) return outcome;
  seed(1, cur);
  emit(1, cur);

  auto left = std::vector<std::array<MpfrScratch, 3>>();
  left.reserve(n);
  std::vector<MpfrScratch> inv_sx = make_row(n, prec), inv_sy = make_row(n, prec);
  for (std::size_t i = 0; i < n; ++i) {
    left.push_back({MpfrScratch(prec), MpfrScratch(prec), MpfrScratch(prec)});
    for (int k = 0; k < 3; ++k) fc.left_exact[i][k].store(left[i][k]);
    mpfr_set_ui(inv_sx[i], static_cast<unsigned long>(params.x_at(i).twice() + 1), MPFR_RNDN);
    mpfr_rec_sqrt(inv_sx[i], inv_sx[i], MPFR_RNDN);
    mpfr_set_ui(inv_sy[i], static_cast<unsigned long>(params.y_at(i).twice() + 1), MPFR_RNDN);
    mpfr_rec_sqrt(inv_sy[i], inv_sy[i], MPFR_RNDN);
  }

  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  for (std::size_t iy = 1; iy + 1 < n; ++iy) {
    const auto& rc = fc.right_exact[iy];
    if (rc[2].is_zero()) {
      seed(iy + 1, next);
      outcome.fallbacks += n;
    } else {
      std::array<MpfrScratch, 3> r{MpfrScratch(prec), MpfrScratch(prec), MpfrScratch(prec)};
      for (int k = 0; k < 3; ++k) rc[k].store(r[k]);
      parallel_for(blocks, [&](std::size_t blk) {
        MpfrScratch lhs(prec), rhs(prec), t(prec);
        const std::size_t end = std::min(n, (blk + 1) * kBlock);
        for (std::size_t ix = blk * kBlock; ix < end; ++ix) {
          mpfr_mul(lhs, left[ix][1], cur[ix], MPFR_RNDN);
          if (ix > 0) {
            mpfr_mul(t, left[ix][0], cur[ix - 1], MPFR_RNDN);
            mpfr_add(lhs, lhs, t, MPFR_RNDN);
          }
          if (ix + 1 < n) {
            mpfr_mul(t, left[ix][2], cur[ix + 1], MPFR_RNDN);
            mpfr_add(lhs, lhs, t, MPFR_RNDN);
          }
          mpfr_mul(lhs, lhs, inv_sy[iy], MPFR_RNDN);
          mpfr_mul(rhs, r[0], prev[ix], MPFR_RNDN);
          mpfr_mul(t, r[1], cur[ix], MPFR_RNDN);
          mpfr_add(rhs, rhs, t, MPFR_RNDN);
          mpfr_mul(rhs, rhs, inv_sx[ix], MPFR_RNDN);
          mpfr_sub(lhs, lhs, rhs, MPFR_RNDN);
          mpfr_mul(t, r[2], inv_sx[ix], MPFR_RNDN);
          mpfr_div(next[ix], lhs, t, MPFR_RNDN);
        }
      });
    }
    emit(iy + 1, next);
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return outcome;
}

double row_quality(const Screen& s) {
  const std::size_t n = s.side();
  double worst = 0.0;
  for (std::size_t iy = 0; iy < n; ++iy) {
    double norm2 = 0.0;
    for (double v : s.row(iy)) norm2 += v * v;
    if (!std::isfinite(norm2)) return INFINITY;
    worst = std::max(worst, std::abs(norm2 - 1.0));
  }
  if (n >= 2) {
    const auto r0 = s.row(n - 1), r1 = s.row(n - 2);
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += r0[i] * r1[i];
    worst = std::max(worst, std::abs(dot));
  }
  return worst;
}

void finish(const FiveTermCoeffs& fc, Screen& screen) {
  const std::size_t n = screen.side();
  double worst = 0.0;
  for (std::size_t iy = 1; iy + 1 < n; ++iy)
    for (std::size_t ix = 0; ix < n; ++ix) worst = std::max(worst, five_term_residual(fc, screen, ix, iy));
  auto& diag = screen.diagnostics();
  diag.max_residual = worst;
  normalize_rows(screen);
  diag.orthonormality_defect = orthonormality_defect(screen);
}

long default_precision(std::size_t side) { return 128 + 2 * static_cast<long>(side); }

}  // namespace

FiveTermCoeffs five_term_coeffs(const ScreenParams& params) {
  const std::size_t n = params.side();
  FiveTermCoeffs fc{params, std::vector<std::array<ExactValue, 3>>(n), std::vector<std::array<ExactValue, 3>>(n),
                    std::vector<std::array<double, 3>>(n), std::vector<std::array<double, 3>>(n)};
  parallel_for(n, [&](std::size_t i) {
    fc.left_exact[i] = side_coeffs(params.x_at(i), params.b, params.a, params.d, params.c);
    fc.right_exact[i] = side_coeffs(params.y_at(i), params.b, params.c, params.d, params.a);
    for (int k = 0; k < 3; ++k) {
      fc.left[i][k] = fc.left_exact[i][k].to_double();
      fc.right[i][k] = fc.right_exact[i][k].to_double();
    }
  });
  return fc;
}

std::array<double, 5> five_term_stencil(const FiveTermCoeffs& c, std::size_t ix, std::size_t iy) {
  const double sx = std::sqrt(c.params.x_at(ix).twice() + 1.0);
  const double sy = std::sqrt(c.params.y_at(iy).twice() + 1.0);
  const auto& l = c.left[ix];
  const auto& r = c.right[iy];
  return {l[0] / sy, l[2] / sy, -r[0] / sx, -r[2] / sx, l[1] / sy - r[1] / sx};
}

double five_term_residual(const FiveTermCoeffs& c, const Screen& s, std::size_t ix, std::size_t iy) {
  const std::size_t n = s.side();
  const auto k = five_term_stencil(c, ix, iy);
  auto u = [&](std::ptrdiff_t i, std::ptrdiff_t j) {
    if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(n) || j >= static_cast<std::ptrdiff_t>(n)) return 0.0;
    return s(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  };
  const auto x = static_cast<std::ptrdiff_t>(ix), y = static_cast<std::ptrdiff_t>(iy);
  const std::array<double, 5> terms{k[0] * u(x - 1, y), k[1] * u(x + 1, y), k[2] * u(x, y - 1), k[3] * u(x, y + 1),
                                    k[4] * u(x, y)};
  double sum = 0.0, scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::abs(t));
  }
  return scale == 0.0 ? 0.0 : std::abs(sum) / scale;
}

Screen screen_by_2d(const ScreenParams& params, const Recur2DOptions& options) {
  const auto fc = five_term_coeffs(params);
  const std::size_t n = params.side();
  RowFill exact_seed = [&](std::size_t iy, std::vector<MpfrScratch>& row) {
    const TwoJ y = params.y_at(iy);
    parallel_for(n, [&](std::size_t ix) { u_exact(params.x_at(ix), y, params).store(row[ix]); });
  };

  Screen screen(params, Method::Recur2D);
  long prec = options.precision_bits > 0 ? options.precision_bits : default_precision(n);
  for (;;) {
    const auto outcome = run_pass(fc, exact_seed, prec, screen);
    const double quality = row_quality(screen);
    if (quality <= options.target_defect) {
      screen.diagnostics().oracle_fallbacks = outcome.fallbacks;
      screen.diagnostics().precision_bits = prec;
      break;
    }
    if (prec * 2 > options.max_precision_bits) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "2D recursion defect " + std::to_string(quality) + " at " + std::to_string(prec) + " bits");
    }
    prec *= 2;
  }
  finish(fc, screen);
  return screen;
}

Screen screen_by_2d(const ScreenParams& params, const SeedRows& seed, const Recur2DOptions& options) {
  const std::size_t n = params.side();
  const bool two_rows = n >= 2;
  if (seed.first.size() != n || (two_rows && seed.second.size() != n)) {
    throw Error(ErrorCode::SeedMismatch, "seed rows must have " + std::to_string(n) + " entries");
  }
  double n0 = 0.0, n1 = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    n0 += seed.first[i] * seed.first[i];
    if (two_rows) {
      n1 += seed.second[i] * seed.second[i];
      dot += seed.first[i] * seed.second[i];
    }
  }
  if (std::abs(n0 - 1.0) > 1e-8 || (two_rows && (std::abs(n1 - 1.0) > 1e-8 || std::abs(dot) > 1e-8))) {
    throw Error(ErrorCode::SeedMismatch, "seed rows are not orthonormal");
  }

  const auto fc = five_term_coeffs(params);
  RowFill fill = [&](std::size_t iy, std::vector<MpfrScratch>& row) {
    if (iy == 0 || iy == 1) {
      const auto& src = iy == 0 ? seed.first : seed.second;
      for (std::size_t i = 0; i < n; ++i) mpfr_set_d(row[i], src[i], MPFR_RNDN);
      return;
    }
    const TwoJ y = params.y_at(iy);
    for (std::size_t ix = 0; ix < n; ++ix) u_exact(params.x_at(ix), y, params).store(row[ix]);
  };
  Screen screen(params, Method::Recur2D);
  const long prec = options.precision_bits > 0 ? options.precision_bits : 53;
  const auto outcome = run_pass(fc, fill, prec, screen);
  screen.diagnostics().oracle_fallbacks = outcome.fallbacks;
  screen.diagnostics().precision_bits = prec;
  finish(fc, screen);
  return screen;
}

}  // namespace spinscreen
