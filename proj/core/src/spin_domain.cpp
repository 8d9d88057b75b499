#include "spinscreen/spin_domain.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <tuple>
#include <vector>

#include "spinscreen/error.hpp"

namespace spinscreen {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyScreen: return "EmptyScreen";
    case ErrorCode::ParityError: return "ParityError";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::PatternError: return "PatternError";
    case ErrorCode::SingularCoefficient: return "SingularCoefficient";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::MatchFailure: return "MatchFailure";
    case ErrorCode::SeedMismatch: return "SeedMismatch";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::DegenerateFace: return "DegenerateFace";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NoClassicalWindow: return "NoClassicalWindow";
  }
  return "Unknown";
}

TwoJ::TwoJ(int twice) : twice_(twice) {
  if (twice < 0) {
    throw Error(ErrorCode::InvalidArgument, "negative angular momentum " + std::to_string(twice) + "/2");
  }
}

bool triad_ok(int two_a, int two_b, int two_c) noexcept {
  if (two_a < 0 || two_b < 0 || two_c < 0) return false;
  if ((two_a + two_b + two_c) % 2 != 0) return false;
  return std::abs(two_a - two_b) <= two_c && two_c <= two_a + two_b;
}

bool triad_ok(TwoJ a, TwoJ b, TwoJ c) noexcept { return triad_ok(a.twice(), b.twice(), c.twice()); }

bool SixJArgs::admissible() const noexcept {
  return triad_ok(a, b, x) && triad_ok(c, d, x) && triad_ok(a, d, y) && triad_ok(b, c, y);
}

namespace {

std::string half(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

}  // namespace

std::string SixJArgs::to_string() const {
  std::ostringstream os;
  os << '{' << half(a.twice()) << ' ' << half(b.twice()) << ' ' << half(x.twice()) << "; "
     << half(c.twice()) << ' ' << half(d.twice()) << ' ' << half(y.twice()) << '}';
  return os.str();
}

std::size_t ScreenParams::x_index(TwoJ x) const {
  const int off = x.twice() - x_min.twice();
  if (x < x_min || x > x_max || off % 2 != 0) {
    throw Error(ErrorCode::OutOfRange, "x = " + half(x.twice()) + " is not on the screen lattice");
  }
  return static_cast<std::size_t>(off / 2);
}

std::size_t ScreenParams::y_index(TwoJ y) const {
  const int off = y.twice() - y_min.twice();
  if (y < y_min || y > y_max || off % 2 != 0) {
    throw Error(ErrorCode::OutOfRange, "y = " + half(y.twice()) + " is not on the screen lattice");
  }
  return static_cast<std::size_t>(off / 2);
}

ScreenParams screen_ranges(int two_a, int two_b, int two_c, int two_d) {
  return screen_ranges(TwoJ(two_a), TwoJ(two_b), TwoJ(two_c), TwoJ(two_d));
}

ScreenParams screen_ranges(TwoJ a, TwoJ b, TwoJ c, TwoJ d) {
  const int A = a.twice(), B = b.twice(), C = c.twice(), D = d.twice();
  if ((A + B + C + D) % 2 != 0) {
    throw Error(ErrorCode::EmptyScreen, "a + b + c + d is not an integer");
  }
  const int xlo = std::max(std::abs(A - B), std::abs(C - D));
  const int xhi = std::min(A + B, C + D);
  const int ylo = std::max(std::abs(A - D), std::abs(B - C));
  const int yhi = std::min(A + D, B + C);
  if (xlo > xhi || ylo > yhi) {
    throw Error(ErrorCode::EmptyScreen, "no admissible (x, y) for these parameters");
  }
  ScreenParams p;
  p.a = a;
  p.b = b;
  p.c = c;
  p.d = d;
  p.x_min = TwoJ(xlo);
  p.x_max = TwoJ(xhi);
  p.y_min = TwoJ(ylo);
  p.y_max = TwoJ(yhi);
  p.two_kappa = TwoJ(xhi - xlo);
  p.s = TwoJ((A + B + C + D) / 2);
  return p;
}

std::array<TwoJ, 4> regge_conjugate(TwoJ a, TwoJ b, TwoJ c, TwoJ d) {
  const int sum = a.twice() + b.twice() + c.twice() + d.twice();
  if (sum % 2 != 0) throw Error(ErrorCode::ParityError, "a + b + c + d is odd in TwoJ units");
  const int s = sum / 2;
  return {TwoJ(s - a.twice()), TwoJ(s - b.twice()), TwoJ(s - c.twice()), TwoJ(s - d.twice())};
}

ScreenParams regge_conjugate(const ScreenParams& p) {
  const auto r = regge_conjugate(p.a, p.b, p.c, p.d);
  return screen_ranges(r[0], r[1], r[2], r[3]);
}

namespace {

struct Candidate {
  std::array<int, 4> abcd;
  bool regge;
  ClassicalPermutation perm;
  bool swapped;
};

std::array<int, 4> apply(ClassicalPermutation perm, const std::array<int, 4>& v) {
  const auto [a, b, c, d] = v;
  switch (perm) {
    case ClassicalPermutation::Identity: return {a, b, c, d};
    case ClassicalPermutation::SwapWithinRows: return {b, a, d, c};
    case ClassicalPermutation::Reverse: return {d, c, b, a};
    case ClassicalPermutation::SwapRows: return {c, d, a, b};
  }
  return v;
}

}  // namespace

CanonicalForm canonicalize(const ScreenParams& p) { return canonicalize(p.a, p.b, p.c, p.d); }

CanonicalForm canonicalize(TwoJ a, TwoJ b, TwoJ c, TwoJ d) {
  // Validates the screen (throws EmptyScreen) before searching the orbit.
  (void)screen_ranges(a, b, c, d);
  const std::array<int, 4> base{a.twice(), b.twice(), c.twice(), d.twice()};
  const auto r = regge_conjugate(a, b, c, d);
  const std::array<int, 4> regge{r[0].twice(), r[1].twice(), r[2].twice(), r[3].twice()};
  const int global_min = std::min(*std::min_element(base.begin(), base.end()),
                                  *std::min_element(regge.begin(), regge.end()));

  std::vector<Candidate> admissible;
  constexpr ClassicalPermutation perms[] = {ClassicalPermutation::Identity, ClassicalPermutation::SwapWithinRows,
                                            ClassicalPermutation::Reverse, ClassicalPermutation::SwapRows};
  for (bool use_regge : {false, true}) {
    const auto& set = use_regge ? regge : base;
    for (auto perm : perms) {
      for (bool swap : {false, true}) {
        auto v = apply(perm, set);
        // {a b x; c d y} = {a d y; c b x}
        if (swap) std::swap(v[1], v[3]);
        if (v[0] == global_min && v[0] <= v[1] && v[1] <= v[3]) {
          admissible.push_back({v, use_regge, perm, swap});
        }
      }
    }
  }
  // The dihedral orbit always places the minimum at a with b <= d.
  const auto best = std::min_element(admissible.begin(), admissible.end(), [](const auto& l, const auto& r) {
    return std::tie(l.regge, l.abcd, l.swapped) < std::tie(r.regge, r.abcd, r.swapped);
  });

  CanonicalForm out;
  out.params = screen_ranges(best->abcd[0], best->abcd[1], best->abcd[2], best->abcd[3]);
  out.regge_applied = best->regge;
  out.permutation = best->perm;
  out.xy_swapped = best->swapped;
  return out;
}

std::pair<int, int> canonical_c_window(const ScreenParams& p) noexcept {
  const int lo = p.d.twice() - p.a.twice() + p.b.twice();
  const int hi = p.d.twice() + p.a.twice() - p.b.twice();
  return {std::min(lo, hi), std::max(lo, hi)};
}

}  // namespace spinscreen
