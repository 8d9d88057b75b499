#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/five_term.hpp"
#include "spinscreen/geometry.hpp"
#include "spinscreen/ninej.hpp"
#include "spinscreen/recursion.hpp"
#include "spinscreen/screen_io.hpp"
#include "spinscreen/semiclassics.hpp"
#include "spinscreen/tridiagonal.hpp"

namespace spinscreen::cli {

namespace {

const Screen& cached(const ScreenParams& p, Method m) {
  static std::map<std::tuple<std::array<int, 4>, Method>, Screen> cache;
  const auto key = std::make_tuple(p.quad(), m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  Screen s = [&] {
    switch (m) {
      case Method::Oracle: return screen_oracle(p);
      case Method::Eigensolve: return screen_by_eigensolve(p);
      case Method::ThreeTerm: return screen_by_threeterm(p);
      case Method::Recur2D: return screen_by_2d(p);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown method");
  }();
  return cache.emplace(key, std::move(s)).first->second;
}

/// Oracle where it is cheap, eigensolve otherwise.
const Screen& reference(const ScreenParams& p) {
  return cached(p, p.side() <= 121 ? Method::Oracle : Method::Eigensolve);
}

CheckResult make(std::string name, double measured, double threshold, std::string rel, bool pass, std::string detail) {
  CheckResult r;
  r.name = std::move(name);
  r.measured = measured;
  r.threshold = threshold;
  r.relation = std::move(rel);
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

CheckResult greater(std::string name, double measured, double threshold, std::string detail = {}) {
  return make(std::move(name), measured, threshold, ">", measured > threshold, std::move(detail));
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SixJArgs random_sixj(std::mt19937_64& rng, int max_two) {
  std::uniform_int_distribution<int> u(0, max_two);
  for (;;) {
    SixJArgs a{TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng))};
    if (a.admissible()) return a;
  }
}

double max_opt_diff(const std::vector<std::optional<double>>& l, const std::vector<std::optional<double>>& r) {
  if (l.size() != r.size()) return INFINITY;
  double m = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].has_value() != r[i].has_value()) return INFINITY;
    if (l[i]) m = std::max(m, std::abs(*l[i] - *r[i]));
  }
  return m;
}

std::vector<CheckResult> spectrum(const VerifyConfig& cfg) {
  const auto tc = tridiag_coeffs(cfg.params);
  const auto eig = tridiagonal_eigen(tc.w, std::span<const double>(tc.p_plus).first(tc.p_plus.size() - 1));
  auto lambda = tc.lambda;
  std::sort(lambda.begin(), lambda.end());
  double worst = 0;
  for (std::size_t k = 0; k < lambda.size(); ++k)
    worst = std::max(worst, std::abs(eig.values[k] - lambda[k]) / std::abs(lambda[k]));
  return {at_most("spectrum", worst, tolerance(cfg, "spectrum", 1e-8),
                  fmt("%zu eigenvalues against lambda(y)", lambda.size()))};
}

std::vector<CheckResult> method_agreement(const VerifyConfig& cfg) {
  const auto& o = cached(cfg.params, Method::Oracle);
  const double tol = tolerance(cfg, "method-agreement", 1e-8);
  std::vector<CheckResult> out;
  for (Method m : {Method::Eigensolve, Method::Recur2D, Method::ThreeTerm}) {
    out.push_back(at_most("method-agreement/oracle-" + std::string(to_string(m)),
                          max_abs_difference(o, cached(cfg.params, m)), tol));
  }
  out.push_back(at_most("method-agreement/eigensolve-recur2d",
                        max_abs_difference(cached(cfg.params, Method::Eigensolve), cached(cfg.params, Method::Recur2D)),
                        tol));
  return out;
}

std::vector<CheckResult> orthonormality(const VerifyConfig& cfg) {
  const double tol = tolerance(cfg, "orthonormality", 1e-10);
  return {at_most("orthonormality/eigensolve", orthonormality_defect(cached(cfg.params, Method::Eigensolve)), tol),
          at_most("orthonormality/recur2d", orthonormality_defect(cached(cfg.params, Method::Recur2D)), tol)};
}

std::vector<CheckResult> recursion_residuals(const VerifyConfig& cfg) {
  const auto& p = cfg.params;
  const auto& e = cached(p, Method::Eigensolve);
  const auto tc = tridiag_coeffs(p);
  double three = 0;
  for (std::size_t iy = 0; iy < e.side(); ++iy) three = std::max(three, threeterm_residual(tc, iy, e.row(iy)));
  const auto fc = five_term_coeffs(p);
  double five = 0, umax = 0;
  for (double v : e.values()) umax = std::max(umax, std::abs(v));
  for (std::size_t iy = 1; iy + 1 < e.side(); ++iy) {
    for (std::size_t ix = 1; ix + 1 < e.side(); ++ix) {
      const auto k = five_term_stencil(fc, ix, iy);
      const double sum = k[0] * e(ix - 1, iy) + k[1] * e(ix + 1, iy) + k[2] * e(ix, iy - 1) + k[3] * e(ix, iy + 1) +
                         k[4] * e(ix, iy);
      const double kmax = std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2]), std::abs(k[3]), std::abs(k[4])});
      if (kmax > 0) five = std::max(five, std::abs(sum) / (kmax * umax));
    }
  }
  const double tol = tolerance(cfg, "recursion-residuals", 1e-10);
  return {at_most("recursion-residuals/three-term", three, tol),
          at_most("recursion-residuals/five-term", five, tol, "eigensolve screen, scaled by max |U| and max coefficient")};
}

std::vector<CheckResult> exact_symmetries(const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::size_t classical = 0, regge = 0, exchange = 0;
  for (std::size_t i = 0; i < cfg.random_cases; ++i) {
    const auto s = random_sixj(rng, 40);
    const auto v = sixj_exact(s);
    const bool ok = sixj_exact({s.b, s.a, s.x, s.d, s.c, s.y}) == v && sixj_exact({s.d, s.c, s.x, s.b, s.a, s.y}) == v &&
                    sixj_exact({s.c, s.d, s.x, s.a, s.b, s.y}) == v && sixj_exact({s.x, s.a, s.b, s.y, s.c, s.d}) == v;
    classical += !ok;
    const int two_s = (s.a.twice() + s.b.twice() + s.c.twice() + s.d.twice()) / 2;
    const SixJArgs r{TwoJ(two_s - s.a.twice()), TwoJ(two_s - s.b.twice()), s.x,
                     TwoJ(two_s - s.c.twice()), TwoJ(two_s - s.d.twice()), s.y};
    regge += !(sixj_exact(r) == v);
    exchange += !(sixj_exact({s.a, s.d, s.y, s.c, s.b, s.x}) == v);
  }
  const auto n = fmt("%zu random argument sets", cfg.random_cases);
  return {at_most("exact-symmetries/classical", static_cast<double>(classical), 0, n),
          at_most("exact-symmetries/regge", static_cast<double>(regge), 0, n),
          at_most("exact-symmetries/exchange", static_cast<double>(exchange), 0, n)};
}

std::vector<CheckResult> unit_closed_forms(const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 1);
  std::uniform_int_distribution<int> u(0, 40);
  std::size_t mismatches = 0, count = 0;
  while (count < cfg.random_cases) {
    SixJArgs s{TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(2), TwoJ(u(rng)), TwoJ(u(rng))};
    if (!s.admissible()) continue;
    ++count;
    mismatches += !(sixj_unit(s) == sixj_exact(s));
  }
  return {at_most("unit-closed-forms", static_cast<double>(mismatches), 0,
                  fmt("%zu symbols with an entry equal to 1", count))};
}

std::vector<CheckResult> geometry_identities(const VerifyConfig& cfg) {
  std::mt19937_64 rng(cfg.seed + 2);
  std::uniform_real_distribution<double> len(0.5, 200.0);
  const std::size_t n = std::max<std::size_t>(cfg.random_cases, 1000);
  double area = 0, caustic = 0, vmax = 0, gram = 0;
  std::size_t tri = 0, tet = 0;
  std::uniform_int_distribution<int> spin(0, 1000);
  while (tri < n) {
    const int ta = spin(rng), tb = spin(rng), tc = spin(rng);
    if (!triad_ok(ta, tb, tc)) continue;
    ++tri;
    const double a = shifted(TwoJ(ta)), b = shifted(TwoJ(tb)), c = shifted(TwoJ(tc));
    const double f = heron_area(a, b, c);
    area = std::max(area, std::abs(lambda_quartic(a, b, c) + 16 * f * f) / (16 * f * f));
  }
  while (tet < n) {
    const double A = len(rng), B = len(rng), C = len(rng), D = len(rng), X = len(rng);
    const auto vm = volume_max(A, B, C, D, X);
    const auto ridge = ridge_y(A, B, C, D, X);
    if (!vm || !ridge || *vm <= 0) continue;
    const auto [lo, hi] = caustic_y(A, B, C, D, X);
    if (!lo || !hi) continue;
    ++tet;
    const double vm2 = *vm * *vm;
    caustic = std::max({caustic, std::abs(volume_sq_poly({A, B, C, D, X, *lo})) / vm2,
                        std::abs(volume_sq_poly({A, B, C, D, X, *hi})) / vm2});
    vmax = std::max(vmax, std::abs(std::sqrt(volume_sq({A, B, C, D, X, *ridge})) - *vm) / *vm);
    std::uniform_real_distribution<double> inside(*lo, *hi);
    const Tetrahedron t{A, B, C, D, X, inside(rng)};
    const double cm = volume_sq(t);
    if (cm > 1e-6 * vm2) gram = std::max(gram, std::abs(cm - volume_sq_gram(t)) / cm);
  }
  const auto d = fmt("%zu random cases", n);
  return {at_most("geometry-identities/lambda-area", area, tolerance(cfg, "geometry-identities/lambda-area", 1e-12), d),
          at_most("geometry-identities/caustic-zero", caustic,
                  tolerance(cfg, "geometry-identities/caustic-zero", 1e-9), d),
          at_most("geometry-identities/ridge-vmax", vmax, tolerance(cfg, "geometry-identities/ridge-vmax", 1e-10), d),
          at_most("geometry-identities/cayley-menger-gram", gram,
                  tolerance(cfg, "geometry-identities/cayley-menger-gram", 1e-10), d)};
}

std::vector<CheckResult> regge_invariance(const VerifyConfig& cfg) {
  const auto& p = cfg.params;
  const auto r = regge_conjugate(p);
  const double tol = tolerance(cfg, "regge-invariance", 1e-12);
  const auto c1 = ridges_and_caustics(p, 4), c2 = ridges_and_caustics(r, 4);
  const double curves = std::max({max_opt_diff(c1.y_vmax, c2.y_vmax), max_opt_diff(c1.v_max, c2.v_max),
                                  max_opt_diff(c1.y_z_minus, c2.y_z_minus), max_opt_diff(c1.y_z_plus, c2.y_z_plus),
                                  max_opt_diff(c1.x_vmax, c2.x_vmax), max_opt_diff(c1.x_z_minus, c2.x_z_minus),
                                  max_opt_diff(c1.x_z_plus, c2.x_z_plus)});
  const bool ranges = p.x_min == r.x_min && p.x_max == r.x_max && p.y_min == r.y_min && p.y_max == r.y_max;
  return {at_most("regge-invariance/ranges", ranges ? 0.0 : 1.0, 0),
          at_most("regge-invariance/curves", curves, tol),
          at_most("regge-invariance/oracle-grid", max_abs_difference(reference(p), reference(r)), tol),
          at_most("regge-invariance/eigensolve-grid",
                  max_abs_difference(cached(p, Method::Eigensolve), cached(r, Method::Eigensolve)), tol)};
}

std::vector<CheckResult> geometric_coeffs_check(const VerifyConfig& cfg) {
  const auto& p = cfg.params;
  const auto tc = tridiag_coeffs(p);
  const std::size_t n = p.side(), iy = n / 2;
  double pa = 0, pm = 0, wa = 0;
  for (std::size_t ix = n / 4; ix <= n - 1 - n / 4; ++ix) {
    const auto g = geometric_coeffs(p.x_at(ix), p.y_at(iy), p);
    pa = std::max(pa, std::abs(g.p_plus_areas / g.p_plus_exact - 1));
    pm = std::max(pm, std::abs(g.p_plus_mean / g.p_plus_exact - 1));
    wa = std::max(wa, std::abs(g.w_lambda_areas - g.w_lambda_exact) / (std::abs(tc.w[ix]) + std::abs(tc.lambda[iy])));
  }
  const double tol = tolerance(cfg, "geometric-coeffs", 1e-3);
  return {at_most("geometric-coeffs/p-plus", pa, tol, "middle half of x, area form"),
          at_most("geometric-coeffs/w-lambda", wa, tol, "middle half of x at the centre row"),
          greater("geometric-coeffs/mean-form-ratio", pa > 0 ? pm / pa : INFINITY, 1.0,
                  "max error of the geometric-mean form over the area form")};
}

std::vector<CheckResult> ponzano_regge(const VerifyConfig& cfg) {
  const auto c = pr_compare(cfg.params, reference(cfg.params));
  return {at_most("ponzano-regge/interior-rel", c.interior_max_rel, tolerance(cfg, "ponzano-regge/interior-rel", 0.05),
                  fmt("%zu interior points", c.interior_count)),
          at_least("ponzano-regge/sign-agreement", c.interior_sign_agreement,
                   tolerance(cfg, "ponzano-regge/sign-agreement", 0.99)),
          greater("ponzano-regge/band-over-interior", c.band_max_rel, c.interior_max_rel,
                  fmt("%zu points with |cos theta3| > 0.9", c.band_count)),
          at_least("ponzano-regge/interior-count", static_cast<double>(c.interior_count), 1)};
}

std::vector<CheckResult> bohr_sommerfeld_check(const VerifyConfig& cfg) {
  const auto& p = cfg.params;
  const std::size_t n = p.side(), half = std::max<std::size_t>(1, n / 20);
  double worst = 0;
  for (std::size_t iy = n / 2 - half; iy < n / 2 + half; ++iy) {
    const double dn = bohr_sommerfeld(p.y_at(iy), p).n_estimate - bohr_sommerfeld(p.y_at(iy + 1), p).n_estimate;
    worst = std::max(worst, std::abs(dn - 1.0));
  }
  return {at_most("bohr-sommerfeld", worst, tolerance(cfg, "bohr-sommerfeld", 0.1),
                  fmt("max |dn - 1| over %zu adjacent mid-screen pairs", 2 * half))};
}

std::vector<CheckResult> ninej_recurrence(const VerifyConfig& cfg) {
  NineJSweep sweep;
  sweep.seed = cfg.seed + 3;
  double worst = 0;
  const auto st = ninej_stencils(sweep);
  for (const auto& v : st) {
    const NineJArgs a{TwoJ(v[0]), TwoJ(v[1]), TwoJ(v[2]), TwoJ(v[3]), TwoJ(v[4]),
                      TwoJ(v[5]), TwoJ(v[6]), TwoJ(v[7]), TwoJ(v[8])};
    worst = std::max(worst, ninej_residual(a).relative);
  }
  return {at_most("ninej-recurrence", worst, tolerance(cfg, "ninej-recurrence", 1e-10),
                  fmt("%zu random stencils", st.size()))};
}

std::vector<CheckResult> ninej_reduction(const VerifyConfig& cfg) {
  const auto r = reduction_check(cfg.params, 200);
  return {at_most("ninej-reduction/ratio-deviation", r.max_ratio_deviation,
                  tolerance(cfg, "ninej-reduction", 1e-9), fmt("%zu stencils", r.stencils)),
          at_most("ninej-reduction/mismatched-zeros", static_cast<double>(r.mismatched_zeros), 0)};
}

std::vector<CheckResult> determinism(const VerifyConfig& cfg) {
  const auto& p = cfg.params;
  double differ = 0, roundtrip = 0;
  for (Format f : {Format::Csv, Format::Json}) {
    std::ostringstream a, b;
    write_screen(a, screen_by_eigensolve(p), f);
    write_screen(b, screen_by_eigensolve(p), f);
    differ += a.str() != b.str();
    std::istringstream in(a.str());
    roundtrip = std::max(roundtrip, max_abs_difference(read_screen(in, f), cached(p, Method::Eigensolve)));
  }
  return {at_most("determinism/repeat", differ, 0, "formats whose repeated output differs"),
          at_most("determinism/round-trip", roundtrip, 0)};
}

}  // namespace

double tolerance(const VerifyConfig& cfg, const std::string& key, double fallback) {
  auto it = cfg.tolerance.find(key);
  return it == cfg.tolerance.end() ? fallback : it->second;
}

CheckResult at_most(std::string name, double measured, double threshold, std::string detail) {
  return make(std::move(name), measured, threshold, "<=", measured <= threshold, std::move(detail));
}

CheckResult at_least(std::string name, double measured, double threshold, std::string detail) {
  return make(std::move(name), measured, threshold, ">=", measured >= threshold, std::move(detail));
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"spectrum", spectrum},
      {"method-agreement", method_agreement},
      {"orthonormality", orthonormality},
      {"recursion-residuals", recursion_residuals},
      {"exact-symmetries", exact_symmetries},
      {"unit-closed-forms", unit_closed_forms},
      {"geometry-identities", geometry_identities},
      {"regge-invariance", regge_invariance},
      {"geometric-coeffs", geometric_coeffs_check},
      {"ponzano-regge", ponzano_regge},
      {"bohr-sommerfeld", bohr_sommerfeld_check},
      {"ninej-recurrence", ninej_recurrence},
      {"ninej-reduction", ninej_reduction},
      {"determinism", determinism},
  };
  return all;
}

std::vector<CheckResult> golden_checks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open golden file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed golden file: ") + e.what());
  }
  const double rel = j.value("relative_tolerance", 1e-13);
  const double abs_tol = j.value("absolute_tolerance", 1e-12);
  std::vector<CheckResult> out;
  auto value_check = [&](const std::string& name, double got, double want) {
    const double err = std::abs(got - want) / std::max(std::abs(want), 1e-300);
    out.push_back(want == 0 ? at_most(name, std::abs(got), 1e-15) : at_most(name, err, rel));
  };
  try {
    for (const auto& e : j.value("sixj", nlohmann::json::array())) {
      const auto t = e.at("two").get<std::array<int, 6>>();
      const SixJArgs s{TwoJ(t[0]), TwoJ(t[1]), TwoJ(t[2]), TwoJ(t[3]), TwoJ(t[4]), TwoJ(t[5])};
      const std::string name = "golden/sixj" + s.to_string();
      if (e.contains("exact")) {
        const bool eq = sixj_exact(s).to_string() == e.at("exact").get<std::string>();
        out.push_back(make(name, eq ? 0 : 1, 0, "<=", eq, "exact representation"));
      } else {
        value_check(name, sixj(s), e.at("value").get<double>());
      }
    }
    for (const auto& e : j.value("u", nlohmann::json::array())) {
      const auto q = e.at("screen").get<std::array<int, 4>>();
      const auto p = screen_ranges(q[0], q[1], q[2], q[3]);
      const TwoJ x(e.at("two_x").get<int>()), y(e.at("two_y").get<int>());
      const double want = e.at("value").get<double>();
      const std::string name = fmt("golden/u(%d,%d)@%d,%d,%d,%d", x.twice(), y.twice(), q[0], q[1], q[2], q[3]);
      value_check(name + "/oracle", u_exact(x, y, p).to_double(), want);
      out.push_back(at_most(name + "/eigensolve", std::abs(screen_by_eigensolve(p).at(x, y) - want), abs_tol,
                            "absolute"));
    }
    for (const auto& e : j.value("ninej", nlohmann::json::array())) {
      const auto t = e.at("two").get<std::array<int, 9>>();
      const NineJArgs a{TwoJ(t[0]), TwoJ(t[1]), TwoJ(t[2]), TwoJ(t[3]), TwoJ(t[4]),
                        TwoJ(t[5]), TwoJ(t[6]), TwoJ(t[7]), TwoJ(t[8])};
      const std::string name = "golden/ninej" + a.to_string();
      if (e.contains("rational")) {
        const bool eq = ninej_exact(a).equals(mpq_class(e.at("rational").get<std::string>()));
        out.push_back(make(name, eq ? 0 : 1, 0, "<=", eq, "exact rational"));
      } else {
        value_check(name, ninej_oracle(a), e.at("value").get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed golden entry: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed golden rational: ") + e.what());
  }
  return out;
}

std::vector<std::array<int, 9>> ninej_stencils(const NineJSweep& sweep) {
  std::vector<std::array<int, 9>> out;
  if (sweep.max_two_j < 1 || sweep.stencils == 0) return out;
  if (sweep.two_h && (*sweep.two_h < 0 || *sweep.two_h > sweep.max_two_j)) return out;
  std::mt19937_64 rng(sweep.seed);
  std::uniform_int_distribution<int> u(0, sweep.max_two_j), pos(1, sweep.max_two_j);
  const std::size_t max_attempts = 200000 + 2000 * sweep.stencils;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < sweep.stencils; ++attempt) {
    std::array<int, 9> v{u(rng), u(rng), pos(rng), pos(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    if (sweep.two_h) v[7] = *sweep.two_h;
    const NineJArgs a{TwoJ(v[0]), TwoJ(v[1]), TwoJ(v[2]), TwoJ(v[3]), TwoJ(v[4]),
                      TwoJ(v[5]), TwoJ(v[6]), TwoJ(v[7]), TwoJ(v[8])};
    if (a.admissible()) out.push_back(v);
  }
  return out;
}

}  // namespace spinscreen::cli
