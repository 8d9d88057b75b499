#include "spinscreen/ninej.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/five_term.hpp"

namespace spinscreen {

namespace {

// TwoJ shifted by delta (in TwoJ units); nullopt when negative.
std::optional<TwoJ> offset(TwoJ v, int delta) {
  const int t = v.twice() + delta;
  if (t < 0) return std::nullopt;
  return TwoJ(t);
}

double ninej_or_zero(NineJArgs args, TwoJ NineJArgs::*field, int delta) {
  const auto v = offset(args.*field, delta);
  if (!v) return 0.0;
  args.*field = *v;
  return ninej_oracle(args);
}

}  // namespace

bool NineJArgs::admissible() const noexcept {
  return triad_ok(a, b, c) && triad_ok(d, e, f) && triad_ok(g, h, j) && triad_ok(a, d, g) && triad_ok(b, e, h) &&
         triad_ok(c, f, j);
}

std::string NineJArgs::to_string() const {
  auto s = [](TwoJ v) { return v.is_integer() ? std::to_string(v.twice() / 2) : std::to_string(v.twice()) + "/2"; };
  return "{" + s(a) + " " + s(b) + " " + s(c) + "; " + s(d) + " " + s(e) + " " + s(f) + "; " + s(g) + " " + s(h) +
         " " + s(j) + "}";
}

SurdSum ninej_exact(const NineJArgs& n) {
  SurdSum sum;
  if (!n.admissible()) return sum;
  const int lo = std::max({std::abs(n.a.twice() - n.j.twice()), std::abs(n.d.twice() - n.h.twice()),
                           std::abs(n.b.twice() - n.f.twice())});
  const int hi = std::min({n.a.twice() + n.j.twice(), n.d.twice() + n.h.twice(), n.b.twice() + n.f.twice()});
  for (int x2 = lo; x2 <= hi; x2 += 2) {
    const TwoJ x(x2);
    const auto s1 = sixj_exact(SixJArgs{n.a, n.b, n.c, n.f, n.j, x});
    if (s1.is_zero()) continue;
    const auto s2 = sixj_exact(SixJArgs{n.d, n.e, n.f, n.b, x, n.h});
    if (s2.is_zero()) continue;
    const auto s3 = sixj_exact(SixJArgs{n.g, n.h, n.j, x, n.a, n.d});
    if (s3.is_zero()) continue;
    auto term = s1 * s2 * s3;
    term *= mpq_class(x2 + 1);
    if (x2 % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

double ninej_oracle(const NineJArgs& args) { return ninej_exact(args).to_double(); }

RecurrenceCoeffs9j ninej_coeffs(double q, double p, double r, double s, double t) {
  const double v1 = (-p + r + q) * (p - r + q) * (p + r - q + 1) * (p + r + q + 1);
  const double v2 = (-s + t + q) * (s - t + q) * (s + t - q + 1) * (s + t + q + 1);
  RecurrenceCoeffs9j out;
  out.A = (v1 > 0.0 && v2 > 0.0) ? std::sqrt(v1) * std::sqrt(v2) : 0.0;
  out.B = (q * (q + 1) - p * (p + 1) + r * (r + 1)) * (q * (q + 1) - s * (s + 1) + t * (t + 1));
  return out;
}

namespace {

struct Eq43 {
  // Coefficients of 9j at c+1, c−1, d+1, d−1 and of the centre (LHS − RHS).
  double c_plus, c_minus, d_plus, d_minus, centre;
};

Eq43 eq43_coeffs(double a, double b, double c, double d, double e, double f, double g, double j, BOrder order) {
  Eq43 k{};
  k.c_plus = ninej_coeffs(c + 1, a, b, f, j).A / ((c + 1) * (2 * c + 1));
  k.c_minus = ninej_coeffs(c, a, b, f, j).A / (c * (2 * c + 1));
  k.d_plus = -ninej_coeffs(d + 1, e, f, a, g).A / ((d + 1) * (2 * d + 1));
  k.d_minus = -ninej_coeffs(d, e, f, a, g).A / (d * (2 * d + 1));
  const double bc = order == BOrder::Verified ? ninej_coeffs(c, b, a, j, f).B : ninej_coeffs(c, a, b, f, j).B;
  const double bd = order == BOrder::Verified ? ninej_coeffs(d, g, a, e, f).B : ninej_coeffs(d, a, g, f, e).B;
  k.centre = -(bd / (d * (d + 1)) - bc / (c * (c + 1)));
  return k;
}

}  // namespace

NineJResidual ninej_residual(const NineJArgs& n, BOrder order) {
  if (n.c.twice() < 1 || n.d.twice() < 1) throw Error(ErrorCode::InvalidArgument, "c and d must be positive");
  const auto k = eq43_coeffs(n.a.j(), n.b.j(), n.c.j(), n.d.j(), n.e.j(), n.f.j(), n.g.j(), n.j.j(), order);
  const std::array<double, 5> terms{
      k.c_plus * ninej_or_zero(n, &NineJArgs::c, +2), k.c_minus * ninej_or_zero(n, &NineJArgs::c, -2),
      k.d_plus * ninej_or_zero(n, &NineJArgs::d, +2), k.d_minus * ninej_or_zero(n, &NineJArgs::d, -2),
      k.centre * ninej_oracle(n)};
  NineJResidual out;
  double sum = 0.0;
  for (double t : terms) {
    sum += t;
    out.scale = std::max(out.scale, std::abs(t));
  }
  out.absolute = std::abs(sum);
  out.relative = out.scale > 0.0 ? out.absolute / out.scale : 0.0;
  return out;
}

ReductionReport reduction_check(const ScreenParams& params, std::size_t max_stencils, BOrder order) {
  // {a b x; d b y; g 0 g}-type symbols reduce to (−1)^{a+b+f+g} {a b x; f g y}
  // / √((2b+1)(2g+1)), a factor constant over the screen.
  const auto fc = five_term_coeffs(params);
  const std::size_t n = params.side();
  const double a = params.a.j(), b = params.b.j(), f = params.c.j(), g = params.d.j();

  std::vector<std::pair<std::size_t, std::size_t>> points;
  for (std::size_t iy = 1; iy + 1 < n; ++iy)
    for (std::size_t ix = 1; ix + 1 < n; ++ix)
      if (params.x_at(ix).twice() >= 1 && params.y_at(iy).twice() >= 1) points.emplace_back(ix, iy);
  if (max_stencils > 0 && points.size() > max_stencils) {
    std::vector<std::pair<std::size_t, std::size_t>> picked;
    for (std::size_t k = 0; k < max_stencils; ++k) picked.push_back(points[k * points.size() / max_stencils]);
    points.swap(picked);
  }

  ReductionReport report;
  for (const auto& [ix, iy] : points) {
    const double x = params.x_at(ix).j(), y = params.y_at(iy).j();
    const auto k = eq43_coeffs(a, b, x, y, b, f, g, g, order);
    const double sx = 2 * x + 1, sy = 2 * y + 1;
    const std::array<double, 5> mapped{
        k.c_minus / std::sqrt((2 * x - 1) * sy), k.c_plus / std::sqrt((2 * x + 3) * sy),
        k.d_minus / std::sqrt(sx * (2 * y - 1)), k.d_plus / std::sqrt(sx * (2 * y + 3)), k.centre / std::sqrt(sx * sy)};
    const auto ft = five_term_stencil(fc, ix, iy);

    double mscale = 0.0, fscale = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      mscale = std::max(mscale, std::abs(mapped[i]));
      fscale = std::max(fscale, std::abs(ft[i]));
    }
    std::vector<double> ratios;
    bool mismatch = false;
    for (std::size_t i = 0; i < 5; ++i) {
      const bool zm = std::abs(mapped[i]) <= 1e-12 * mscale;
      const bool zf = std::abs(ft[i]) <= 1e-12 * fscale;
      if (zm && zf) continue;
      if (zm != zf) {
        mismatch = true;
        continue;
      }
      ratios.push_back(mapped[i] / ft[i]);
    }
    if (mismatch) ++report.mismatched_zeros;
    if (ratios.empty()) {
      ++report.skipped;
      continue;
    }
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double dev = 0.0;
    for (double r : ratios) dev = std::max(dev, std::abs(r - mean) / std::abs(mean));
    report.max_ratio_deviation = std::max(report.max_ratio_deviation, dev);
    ++report.stencils;
  }
  return report;
}

}  // namespace spinscreen
