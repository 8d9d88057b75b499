#include "spinscreen/recursion.hpp"

#include <algorithm>
#include <cmath>

#include "spinscreen/error.hpp"
#include "spinscreen/parallel.hpp"
#include "spinscreen/tridiagonal.hpp"

namespace spinscreen {

namespace {

constexpr double kRescaleAbove = 1e100;

struct Quad {
  double a, b, c, d;
};

Quad quad_j(const ScreenParams& p) { return {p.a.j(), p.b.j(), p.c.j(), p.d.j()}; }

void rescale(std::span<double> v, std::size_t from, std::size_t to, double k) {
  for (std::size_t i = from; i < to; ++i) v[i] *= k;
}

}  // namespace

double p_plus(const ScreenParams& p, double x) {
  const auto [a, b, c, d] = quad_j(p);
  const double t1 = (a + b + x + 2) * (a + b - x) * (a - b + x + 1) * (-a + b + x + 1);
  const double t2 = (d + c + x + 2) * (d + c - x) * (d - c + x + 1) * (-d + c + x + 1);
  if (t1 <= 0.0 || t2 <= 0.0) return 0.0;
  return std::sqrt(t1) * std::sqrt(t2) / ((x + 1) * std::sqrt((2 * x + 1) * (2 * x + 3)));
}

double w_coeff(const ScreenParams& p, double x) {
  const auto [a, b, c, d] = quad_j(p);
  const double xx = x * (x + 1);
  const double u = b * (b + 1) - a * (a + 1);
  const double v = d * (d + 1) - c * (c + 1);
  if (xx != 0.0) return (u + xx) * (v - xx) / xx;
  if (u == 0.0) return v;
  if (v == 0.0) return -u;
  throw Error(ErrorCode::SingularCoefficient, "w(x) diverges at x = 0");
}

double lambda_coeff(const ScreenParams& p, double y) {
  const double b = p.b.j(), c = p.c.j();
  return 2.0 * (y * (y + 1) - b * (b + 1) - c * (c + 1));
}

TridiagCoeffs tridiag_coeffs(const ScreenParams& params) {
  TridiagCoeffs out{params, {}, {}, {}};
  const std::size_t n = params.side();
  out.p_plus.resize(n);
  out.w.resize(n);
  out.lambda.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = params.x_at(i).j();
    out.p_plus[i] = i + 1 < n ? p_plus(params, x) : 0.0;
    out.w[i] = w_coeff(params, x);
    out.lambda[i] = lambda_coeff(params, params.y_at(i).j());
  }
  return out;
}

int boundary_sign(const ScreenParams& params) noexcept {
  const int s = (params.a.twice() + params.b.twice() + params.c.twice() + params.d.twice()) / 2;
  return s % 2 == 0 ? 1 : -1;
}

namespace {

// Backward three-term recursion from x_max down to index stop, seeded with the
// boundary sign. Only the sign at stop is meaningful.
double backward_probe(const TridiagCoeffs& tc, std::size_t iy, std::size_t stop) {
  const std::size_t n = tc.w.size();
  const double lam = tc.lambda[iy];
  double next = 0.0, cur = boundary_sign(tc.params);
  for (std::size_t j = n - 1; j > stop; --j) {
    const double prev = ((lam - tc.w[j]) * cur - tc.p_plus[j] * next) / tc.p_plus[j - 1];
    next = cur;
    cur = prev;
    if (std::abs(cur) > kRescaleAbove) {
      cur /= kRescaleAbove;
      next /= kRescaleAbove;
    }
  }
  return cur;
}

}  // namespace

Screen screen_by_eigensolve(const ScreenParams& params) {
  const auto tc = tridiag_coeffs(params);
  const std::size_t n = params.side();
  std::vector<double> off(tc.p_plus.begin(), tc.p_plus.end() - 1);
  auto eig = tridiagonal_eigen(tc.w, off);

  Screen screen(params, Method::Eigensolve);
  double lam_scale = 0.0, lam_err = 0.0;
  for (std::size_t k = 0; k < n; ++k) lam_scale = std::max(lam_scale, std::abs(tc.lambda[k]));
  if (lam_scale == 0.0) lam_scale = 1.0;

  parallel_for(n, [&](std::size_t k) {
    auto v = eig.vector(k);
    double vmax = 0.0;
    for (double e : v) vmax = std::max(vmax, std::abs(e));
    std::size_t idx = n - 1;
    while (idx > 0 && std::abs(v[idx]) <= 1e-3 * vmax) --idx;
    const double probe = backward_probe(tc, k, idx);
    const bool flip = (probe < 0) != (v[idx] < 0);
    auto row = screen.row(k);
    for (std::size_t i = 0; i < n; ++i) row[i] = flip ? -v[i] : v[i];
  });
  for (std::size_t k = 0; k < n; ++k) lam_err = std::max(lam_err, std::abs(eig.values[k] - tc.lambda[k]));

  auto& diag = screen.diagnostics();
  diag.max_eigenvalue_error = lam_err / lam_scale;
  for (std::size_t k = 0; k < n; ++k) diag.max_residual = std::max(diag.max_residual, threeterm_residual(tc, k, screen.row(k)));
  diag.orthonormality_defect = orthonormality_defect(screen);
  return screen;
}

std::vector<double> row_by_threeterm(TwoJ y, const ScreenParams& params) {
  return row_by_threeterm(params.y_index(y), tridiag_coeffs(params));
}

std::vector<double> row_by_threeterm(std::size_t iy, const TridiagCoeffs& tc) {
  const std::size_t n = tc.w.size();
  const double lam = tc.lambda[iy];
  std::vector<double> row(n, 0.0);
  if (n == 1) {
    row[0] = boundary_sign(tc.params);
    return row;
  }

  // Matching window: the classical region |λ − w| ≤ 2p̄, else the middle.
  std::size_t lo = n, hi = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pbar = 0.5 * (tc.p_plus[i] + tc.p_minus(i));
    if (std::abs(lam - tc.w[i]) <= 2.0 * pbar) {
      lo = std::min(lo, i);
      hi = std::max(hi, i);
    }
  }
  std::size_t m = lo <= hi ? (lo + hi) / 2 : n / 2;
  m = std::clamp<std::size_t>(m, 1, n - 2 > 0 ? n - 2 : 1);
  if (n == 2) m = 0;
  const std::size_t m0 = m == 0 ? 0 : m - 1;
  const std::size_t m1 = std::min(m + 1, n - 1);

  // Forward branch on [0, m1].
  std::vector<double> fwd(n, 0.0);
  fwd[0] = 1.0;
  for (std::size_t i = 0; i < m1; ++i) {
    const double prev = i > 0 ? fwd[i - 1] : 0.0;
    fwd[i + 1] = ((lam - tc.w[i]) * fwd[i] - tc.p_minus(i) * prev) / tc.p_plus[i];
    if (std::abs(fwd[i + 1]) > kRescaleAbove) rescale(fwd, 0, i + 2, 1.0 / kRescaleAbove);
  }
  // Backward branch on [m0, n-1].
  std::vector<double> bwd(n, 0.0);
  bwd[n - 1] = boundary_sign(tc.params);
  for (std::size_t j = n - 1; j > m0; --j) {
    const double next = j + 1 < n ? bwd[j + 1] : 0.0;
    bwd[j - 1] = ((lam - tc.w[j]) * bwd[j] - tc.p_plus[j] * next) / tc.p_plus[j - 1];
    if (std::abs(bwd[j - 1]) > kRescaleAbove) rescale(bwd, j - 1, n, 1.0 / kRescaleAbove);
  }

  double ff = 0.0, fb = 0.0, bb = 0.0;
  for (std::size_t i = m0; i <= m1; ++i) {
    ff += fwd[i] * fwd[i];
    fb += fwd[i] * bwd[i];
    bb += bwd[i] * bwd[i];
  }
  if (ff == 0.0 || bb == 0.0 || !std::isfinite(ff) || !std::isfinite(bb)) {
    throw Error(ErrorCode::MatchFailure, "degenerate branch at match point");
  }
  // Both branches must be parallel on the matching stencil.
  const double cos2 = (fb * fb) / (ff * bb);
  if (!(cos2 > 1.0 - 1e-8)) throw Error(ErrorCode::MatchFailure, "forward and backward branches disagree");

  const double k = fb / ff;
  for (std::size_t i = 0; i <= m; ++i) row[i] = k * fwd[i];
  for (std::size_t i = m + 1; i < n; ++i) row[i] = bwd[i];

  double norm = 0.0;
  for (double v : row) norm += v * v;
  norm = std::sqrt(norm);
  for (double& v : row) v /= norm;
  return row;
}

Screen screen_by_threeterm(const ScreenParams& params) {
  const auto tc = tridiag_coeffs(params);
  const std::size_t n = params.side();
  Screen screen(params, Method::ThreeTerm);
  std::vector<char> failed(n, 0);
  parallel_for(n, [&](std::size_t iy) {
    try {
      auto row = row_by_threeterm(iy, tc);
      std::copy(row.begin(), row.end(), screen.row(iy).begin());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MatchFailure) throw;
      failed[iy] = 1;
    }
  });
  if (std::find(failed.begin(), failed.end(), 1) != failed.end()) {
    const auto eig = screen_by_eigensolve(params);
    for (std::size_t iy = 0; iy < n; ++iy) {
      if (failed[iy]) std::copy(eig.row(iy).begin(), eig.row(iy).end(), screen.row(iy).begin());
    }
  }
  auto& diag = screen.diagnostics();
  for (std::size_t k = 0; k < n; ++k) diag.max_residual = std::max(diag.max_residual, threeterm_residual(tc, k, screen.row(k)));
  diag.orthonormality_defect = orthonormality_defect(screen);
  return screen;
}

double threeterm_residual(const TridiagCoeffs& tc, std::size_t iy, std::span<const double> row) {
  const std::size_t n = row.size();
  double scale = 0.0;
  for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double worst = 0.0, coeff = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = tc.p_plus[i] * row[i + 1] + tc.w[i] * row[i] + tc.p_minus(i) * row[i - 1] - tc.lambda[iy] * row[i];
    worst = std::max(worst, std::abs(r));
    coeff = std::max(coeff, std::abs(tc.p_plus[i]) + std::abs(tc.w_lambda(i, iy)) + std::abs(tc.p_minus(i)));
  }
  return coeff == 0.0 ? 0.0 : worst / (scale * coeff);
}

}  // namespace spinscreen
