// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "spinscreen/error.hpp"
#include "spinscreen/exact_oracle.hpp"
#include "spinscreen/five_term.hpp"
#include "spinscreen/geometry.hpp"
#include "spinscreen/ninej.hpp"
#include "spinscreen/recursion.hpp"
#include "spinscreen/semiclassics.hpp"
#include "spinscreen/tridiagonal.hpp"

#ifndef SPINSCREEN_CLI
#define SPINSCREEN_CLI ""
#endif

using namespace spinscreen;
namespace fs = std::filesystem;

namespace {

constexpr double kSpectrumTol = 1e-8;
constexpr double kSpectrumSeconds = 1.0;
constexpr double kAgreementTol = 1e-8;
constexpr double kAgreementSeconds = 30.0;
constexpr double kOrthoTol = 1e-10;
constexpr double kOrthoSeconds = 60.0;
constexpr std::size_t kSymmetrySets = 500;
constexpr std::size_t kGeometryCases = 1000;
constexpr double kLambdaAreaTol = 1e-12;
constexpr double kCausticTol = 1e-9;
constexpr double kRidgeTol = 1e-10;
constexpr double kGramTol = 1e-10;
constexpr double kReggeTol = 1e-12;
constexpr double kCoeffTol = 1e-3;
constexpr double kPRRelTol = 0.05;
constexpr double kPRSignTol = 0.99;
constexpr double kBSStepTol = 0.1;
constexpr std::size_t kNineJStencils = 100;
constexpr double kNineJTol = 1e-10;
constexpr double kReductionTol = 1e-9;

const ScreenParams kSmall = screen_ranges(60, 90, 120, 110);
const ScreenParams kLarge = screen_ranges(600, 900, 1200, 1100);

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const Screen& large_eigensolve() {
  static const Screen s = screen_by_eigensolve(kLarge);
  return s;
}

Outcome spectrum() {
  const auto t0 = Clock::now();
  const auto tc = tridiag_coeffs(kSmall);
  const auto eig = tridiagonal_eigen(tc.w, std::span<const double>(tc.p_plus).first(kSmall.side() - 1));
  const double secs = seconds_since(t0);
  std::vector<double> lambda;
  for (std::size_t iy = 0; iy < kSmall.side(); ++iy) lambda.push_back(lambda_coeff(kSmall, kSmall.y_at(iy).j()));
  std::sort(lambda.begin(), lambda.end());
  double worst = 0;
  for (std::size_t k = 0; k < lambda.size(); ++k)
    worst = std::max(worst, std::abs(eig.values[k] - lambda[k]) / std::abs(lambda[k]));
  return {lambda.size() == 61 && worst <= kSpectrumTol && secs < kSpectrumSeconds,
          fmt("61 eigenvalues, max rel err %.3g (tol %.0e), %.3f s (limit %.0f s)", worst, kSpectrumTol, secs,
              kSpectrumSeconds)};
}

Outcome agreement() {
  const auto t0 = Clock::now();
  const auto o = screen_oracle(kSmall);
  const auto e = screen_by_eigensolve(kSmall);
  const auto r = screen_by_2d(kSmall);
  const double secs = seconds_since(t0);
  const double oe = max_abs_difference(o, e), orr = max_abs_difference(o, r), er = max_abs_difference(e, r);
  const double worst = std::max({oe, orr, er});
  return {o.values().size() == 3721 && worst <= kAgreementTol && secs < kAgreementSeconds,
          fmt("3721 entries, oracle-eigensolve %.3g, oracle-2D %.3g, eigensolve-2D %.3g (tol %.0e), %.2f s (limit %.0f s)",
              oe, orr, er, kAgreementTol, secs, kAgreementSeconds)};
}

Outcome orthonormality() {
  double worst = 0;
  for (const auto& p : {kSmall, screen_ranges(200, 300, 400, 370)})
    worst = std::max(worst, orthonormality_defect(screen_by_eigensolve(p)));
  const auto t0 = Clock::now();
  const auto& big = large_eigensolve();
  const double defect = orthonormality_defect(big);
  const double secs = seconds_since(t0);
  worst = std::max(worst, defect);
  return {big.side() == 601 && worst <= kOrthoTol && secs < kOrthoSeconds,
          fmt("kappa 30/100/300, max |UU^T - I| %.3g (tol %.0e), 601x601 in %.2f s (limit %.0f s)", worst, kOrthoTol,
              secs, kOrthoSeconds)};
}

Outcome symmetries() {
  std::mt19937_64 rng(500);
  std::uniform_int_distribution<int> u(0, 50);
  std::size_t sets = 0, classical = 0, regge = 0, exchange = 0;
  while (sets < kSymmetrySets) {
    const SixJArgs s{TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng))};
    if (!s.admissible()) continue;
    ++sets;
    const auto v = sixj_exact(s);
    classical += !(sixj_exact({s.b, s.a, s.x, s.d, s.c, s.y}) == v && sixj_exact({s.d, s.c, s.x, s.b, s.a, s.y}) == v &&
                   sixj_exact({s.c, s.d, s.x, s.a, s.b, s.y}) == v);
    const int h = (s.a.twice() + s.b.twice() + s.c.twice() + s.d.twice()) / 2;
    regge += !(sixj_exact({TwoJ(h - s.a.twice()), TwoJ(h - s.b.twice()), s.x, TwoJ(h - s.c.twice()),
                           TwoJ(h - s.d.twice()), s.y}) == v);
    exchange += !(sixj_exact({s.a, s.d, s.y, s.c, s.b, s.x}) == v);
  }
  return {classical == 0 && regge == 0 && exchange == 0,
          fmt("%zu random sets, exact mismatches: classical %zu, regge %zu, exchange %zu", sets, classical, regge,
              exchange)};
}

Outcome geometry() {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> len(0.5, 500.0);
  double area = 0, caustic = 0, ridge = 0, gram = 0;
  std::size_t tri = 0, tet = 0, vol = 0;
  std::uniform_int_distribution<int> spin(0, 1000);
  while (tri < kGeometryCases) {
    const int ta = spin(rng), tb = spin(rng), tc = spin(rng);
    if (!triad_ok(ta, tb, tc)) continue;
    ++tri;
    const double a = shifted(TwoJ(ta)), b = shifted(TwoJ(tb)), c = shifted(TwoJ(tc));
    const double f2 = heron_area(a, b, c) * heron_area(a, b, c);
    area = std::max(area, std::abs(lambda_quartic(a, b, c) + 16 * f2) / (16 * f2));
  }
  while (tet < kGeometryCases) {
    const double A = len(rng), B = len(rng), C = len(rng), D = len(rng), X = len(rng);
    const auto vm = volume_max(A, B, C, D, X);
    const auto ry = ridge_y(A, B, C, D, X);
    const auto [lo, hi] = caustic_y(A, B, C, D, X);
    if (!vm || !ry || !lo || !hi || *vm <= 0) continue;
    ++tet;
    const double vm2 = *vm * *vm;
    caustic = std::max({caustic, std::abs(volume_sq_poly({A, B, C, D, X, *lo})) / vm2,
                        std::abs(volume_sq_poly({A, B, C, D, X, *hi})) / vm2});
    ridge = std::max(ridge, std::abs(std::sqrt(volume_sq({A, B, C, D, X, *ry})) - *vm) / *vm);
  }
  while (vol < kGeometryCases) {
    const Tetrahedron t{len(rng), len(rng), len(rng), len(rng), len(rng), len(rng)};
    const double cm = volume_sq(t);
    const double e = std::max({t.A, t.B, t.C, t.D, t.X, t.Y});
    if (cm <= 1e-6 * std::pow(e, 6)) continue;
    ++vol;
    gram = std::max(gram, std::abs(cm - volume_sq_gram(t)) / cm);
  }
  return {area <= kLambdaAreaTol && caustic <= kCausticTol && ridge <= kRidgeTol && gram <= kGramTol,
          fmt("%zu cases each: lambda=-16F^2 on spin triads %.2g (%.0e), V^2 at caustic/Vmax^2 %.2g (%.0e), ridge Vmax %.2g (%.0e), "
              "Cayley-Menger vs Gram %.2g (%.0e)",
              kGeometryCases, area, kLambdaAreaTol, caustic, kCausticTol, ridge, kRidgeTol, gram, kGramTol)};
}

double curve_diff(const std::vector<std::optional<double>>& l, const std::vector<std::optional<double>>& r) {
  double m = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (l[i].has_value() != r[i].has_value()) return INFINITY;
    if (l[i]) m = std::max(m, std::abs(*l[i] - *r[i]));
  }
  return l.size() == r.size() ? m : INFINITY;
}

Outcome regge() {
  const auto r = regge_conjugate(kSmall);
  const auto a = ridges_and_caustics(kSmall, 4), b = ridges_and_caustics(r, 4);
  const double curves = std::max({curve_diff(a.y_vmax, b.y_vmax), curve_diff(a.v_max, b.v_max),
                                  curve_diff(a.y_z_minus, b.y_z_minus), curve_diff(a.y_z_plus, b.y_z_plus),
                                  curve_diff(a.x_vmax, b.x_vmax), curve_diff(a.x_z_minus, b.x_z_minus),
                                  curve_diff(a.x_z_plus, b.x_z_plus)});
  const double oracle = max_abs_difference(screen_oracle(kSmall), screen_oracle(r));
  const double eig = max_abs_difference(screen_by_eigensolve(kSmall), screen_by_eigensolve(r));
  const bool ranges = r.x_min == kSmall.x_min && r.x_max == kSmall.x_max && r.y_min == kSmall.y_min &&
                      r.y_max == kSmall.y_max;
  return {ranges && std::max({curves, oracle, eig}) <= kReggeTol,
          fmt("conjugate (%d,%d,%d,%d): curves %.3g, oracle grid %.3g, eigensolve grid %.3g (tol %.0e)", r.a.twice(),
              r.b.twice(), r.c.twice(), r.d.twice(), curves, oracle, eig, kReggeTol)};
}

Outcome coefficients() {
  const auto& p = kLarge;
  const std::size_t n = p.side(), iy = n / 2;
  double pa = 0, pm = 0, wa = 0;
  for (std::size_t ix = n / 4; ix <= n - 1 - n / 4; ++ix) {
    const auto g = geometric_coeffs(p.x_at(ix), p.y_at(iy), p, XPrime::ShiftedProduct);
    const double scale = std::abs(w_coeff(p, p.x_at(ix).j())) + std::abs(lambda_coeff(p, p.y_at(iy).j()));
    pa = std::max(pa, std::abs(g.p_plus_areas / g.p_plus_exact - 1));
    pm = std::max(pm, std::abs(g.p_plus_mean / g.p_plus_exact - 1));
    wa = std::max(wa, std::abs(g.w_lambda_areas - g.w_lambda_exact) / scale);
  }
  return {pa <= kCoeffTol && wa <= kCoeffTol && pm > pa,
          fmt("middle half of x: p+ %.3g, w_lambda %.3g (tol %.0e); mean-form p+ %.3g > area-form %.3g", pa, wa,
              kCoeffTol, pm, pa)};
}

Outcome ponzano_regge() {
  const auto& e = large_eigensolve();
  const auto c = pr_compare(kLarge, e);
  // Spot-check the reference values against the exact oracle.
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> idx(0, kLarge.side() - 1);
  double spot = 0;
  for (int k = 0; k < 10; ++k) {
    const std::size_t ix = idx(rng), iy = idx(rng);
    spot = std::max(spot, std::abs(u_exact(kLarge.x_at(ix), kLarge.y_at(iy), kLarge).to_double() - e(ix, iy)));
  }
  return {c.interior_count > 0 && c.interior_max_rel <= kPRRelTol && c.interior_sign_agreement >= kPRSignTol &&
              c.band_max_rel > c.interior_max_rel && spot < 1e-12,
          fmt("%zu interior points: max rel %.4f (tol %.2f), sign agreement %.4f (min %.2f); |cos|>0.9 band (%zu pts) "
              "max rel %.3g > interior; reference spot check %.2g",
              c.interior_count, c.interior_max_rel, kPRRelTol, c.interior_sign_agreement, kPRSignTol, c.band_count,
              c.band_max_rel, spot)};
}

Outcome bohr_sommerfeld_ladder() {
  const std::size_t mid = kLarge.side() / 2;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t iy = mid - 5; iy < mid + 5; ++iy) {
    const double dn =
        bohr_sommerfeld(kLarge.y_at(iy), kLarge).n_estimate - bohr_sommerfeld(kLarge.y_at(iy + 1), kLarge).n_estimate;
    lo = std::min(lo, dn);
    hi = std::max(hi, dn);
  }
  return {lo >= 1.0 - kBSStepTol && hi <= 1.0 + kBSStepTol,
          fmt("10 adjacent mid-screen row pairs: step in n within [%.4f, %.4f] (allowed 1 +/- %.1f)", lo, hi,
              kBSStepTol)};
}

Outcome ninej() {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> u(0, 8), pos(1, 8);
  std::size_t n = 0;
  double worst = 0;
  while (n < kNineJStencils) {
    const NineJArgs a{TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(pos(rng)), TwoJ(pos(rng)), TwoJ(u(rng)),
                      TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng)), TwoJ(u(rng))};
    if (!a.admissible()) continue;
    ++n;
    worst = std::max(worst, ninej_residual(a).relative);
  }
  const auto r1 = reduction_check(kSmall, 400);
  const auto r2 = reduction_check(screen_ranges(7, 11, 13, 15));
  const double dev = std::max(r1.max_ratio_deviation, r2.max_ratio_deviation);
  return {worst <= kNineJTol && dev <= kReductionTol && r1.mismatched_zeros + r2.mismatched_zeros == 0 &&
              r1.stencils > 0 && r2.stencils > 0,
          fmt("%zu stencils: max rel residual %.3g (tol %.0e); h=0 reduction on %zu+%zu stencils: ratio deviation %.3g "
              "(tol %.0e)",
              n, worst, kNineJTol, r1.stencils, r2.stencils, dev, kReductionTol)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism() {
  const std::string cli = SPINSCREEN_CLI;
  if (cli.empty() || !fs::exists(cli)) return {false, "command-line tool not available"};
  const fs::path root = fs::temp_directory_path() / fmt("spinscreen-acceptance-%d", static_cast<int>(::getpid()));
  std::size_t files = 0, differ = 0;
  for (const char* method : {"oracle", "eigensolve", "threeterm", "recur2d"}) {
    for (const char* format : {"csv", "json"}) {
      std::vector<fs::path> dirs{root / "run1", root / "run2"};
      for (const auto& d : dirs) {
        fs::remove_all(d);
        const std::string cmd = fmt("\"%s\" compute --two-a 60 --two-b 90 --two-c 120 --two-d 110 --method %s "
                                    "--format %s --output screen,caustics,ridges,potentials,cos-theta3,pr-compare "
                                    "--output-dir \"%s\" > /dev/null",
                                    cli.c_str(), method, format, d.c_str());
        if (std::system(cmd.c_str()) != 0) return {false, std::string("compute failed: ") + method};
      }
      for (const auto& entry : fs::directory_iterator(dirs[0])) {
        ++files;
        const auto other = dirs[1] / entry.path().filename();
        if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differ;
      }
    }
  }
  fs::remove_all(root);
  return {files > 0 && differ == 0, fmt("%zu output files from repeated compute runs, %zu differ", files, differ)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"spectrum match", spectrum},
      {"method cross-agreement", agreement},
      {"orthonormality", orthonormality},
      {"exact symmetries", symmetries},
      {"geometry identities", geometry},
      {"regge invariance on the screen", regge},
      {"geometric-coefficient accuracy", coefficients},
      {"ponzano-regge", ponzano_regge},
      {"bohr-sommerfeld ladder", bohr_sommerfeld_ladder},
      {"9j recurrence", ninej},
      {"determinism", determinism},
  };
  int failed = 0, k = 0;
  for (const auto& [name, run] : criteria) {
    ++k;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", k - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
