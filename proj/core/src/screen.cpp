#include "spinscreen/screen.hpp"

#include <algorithm>
#include <cmath>

#include "spinscreen/error.hpp"
#include "spinscreen/parallel.hpp"

namespace spinscreen {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Oracle: return "oracle";
    case Method::Eigensolve: return "eigensolve";
    case Method::ThreeTerm: return "threeterm";
    case Method::Recur2D: return "recur2d";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (auto m : {Method::Oracle, Method::Eigensolve, Method::ThreeTerm, Method::Recur2D}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

Screen::Screen(const ScreenParams& params, Method method)
    : params_(params), method_(method), side_(params.side()), values_(side_ * side_, 0.0) {}

double orthonormality_defect(const Screen& s) {
  const std::size_t n = s.side();
  std::vector<double> rows_defect(n, 0.0), cols_defect(n, 0.0);
  // Transposed copy so both products stream through contiguous memory.
  std::vector<double> t(n * n);
  for (std::size_t iy = 0; iy < n; ++iy)
    for (std::size_t ix = 0; ix < n; ++ix) t[ix * n + iy] = s(ix, iy);

  parallel_for(n, [&](std::size_t i) {
    double worst_row = 0.0, worst_col = 0.0;
    const auto ri = s.row(i);
    const double* ci = t.data() + i * n;
    for (std::size_t j = i; j < n; ++j) {
      const auto rj = s.row(j);
      const double* cj = t.data() + j * n;
      double dr = 0.0, dc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        dr += ri[k] * rj[k];
        dc += ci[k] * cj[k];
      }
      const double target = (i == j) ? 1.0 : 0.0;
      worst_row = std::max(worst_row, std::abs(dr - target));
      worst_col = std::max(worst_col, std::abs(dc - target));
    }
    rows_defect[i] = worst_row;
    cols_defect[i] = worst_col;
  });
  return std::max(*std::max_element(rows_defect.begin(), rows_defect.end()),
                  *std::max_element(cols_defect.begin(), cols_defect.end()));
}

double max_abs_difference(const Screen& l, const Screen& r) {
  if (l.side() != r.side()) throw Error(ErrorCode::InvalidArgument, "screens differ in size");
  double worst = 0.0;
  const auto a = l.values(), b = r.values();
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double normalize_rows(Screen& s) {
  double worst = 0.0;
  for (std::size_t iy = 0; iy < s.side(); ++iy) {
    auto row = s.row(iy);
    double norm2 = 0.0;
    for (double v : row) norm2 += v * v;
    worst = std::max(worst, std::abs(norm2 - 1.0));
    if (norm2 > 0.0) {
      const double k = 1.0 / std::sqrt(norm2);
      for (double& v : row) v *= k;
    }
  }
  return worst;
}

}  // namespace spinscreen
