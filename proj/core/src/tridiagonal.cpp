#include "spinscreen/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "spinscreen/error.hpp"

namespace spinscreen {

TridiagonalEigen tridiagonal_eigen(std::span<const double> diag, std::span<const double> off) {
  const std::size_t n = diag.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty tridiagonal matrix");
  if (off.size() + 1 != n) throw Error(ErrorCode::InvalidArgument, "off-diagonal length must be n-1");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(n, 0.0);
  std::copy(off.begin(), off.end(), e.begin());
  std::vector<double> z(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = 1.0;

  const double eps = std::numeric_limits<double>::epsilon();
  const int max_iter = 60;
  double f = 0.0, tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > max_iter) {
          throw Error(ErrorCode::ConvergenceFailure, "QL iteration did not converge at index " + std::to_string(l));
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[ii];
          h = c * p;
          r = std::hypot(p, e[ii]);
          e[ii + 1] = s * r;
          s = e[ii] / r;
          c = p / r;
          p = c * d[ii] - s * g;
          d[ii + 1] = h + s * (c * g + s * d[ii]);
          double* zi = z.data() + ii * n;
          double* zj = zi + n;
          for (std::size_t k = 0; k < n; ++k) {
            h = zj[k];
            zj[k] = s * zi[k] + c * h;
            zi[k] = c * zi[k] - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  TridiagonalEigen out;
  out.n = n;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    std::copy_n(z.data() + order[k] * n, n, out.vectors.data() + k * n);
  }
  return out;
}

}  // namespace spinscreen
