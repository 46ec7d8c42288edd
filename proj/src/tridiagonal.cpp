#include "qtransfer/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qtransfer {

namespace {

template <typename Real>
Real copy_sign(Real magnitude, Real sign_source) {
  return sign_source >= Real(0) ? std::abs(magnitude) : -std::abs(magnitude);
}

}  // namespace

template <typename Real>
TridiagonalEigen<Real> tridiagonal_eigensolve(std::vector<Real> d, std::vector<Real> off,
                                              int max_sweeps) {
  const std::size_t n = d.size();
  if (n == 0) throw std::invalid_argument("tridiagonal_eigensolve: empty matrix");
  if (off.size() + 1 != n)
    throw std::invalid_argument("tridiagonal_eigensolve: off-diagonal must have n-1 entries");

  std::vector<Real> e(n, Real(0));
  std::copy(off.begin(), off.end(), e.begin());

  // z(row, col) = z[col * n + row]; starts as identity, accumulates the rotations.
  std::vector<Real> z(n * n, Real(0));
  for (std::size_t i = 0; i < n; ++i) z[i * n + i] = Real(1);
  auto Z = [&](std::size_t row, std::size_t col) -> Real& { return z[col * n + row]; };

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const Real dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) + dd == dd) break;
      }
      if (m == l) break;
      if (sweeps++ == max_sweeps)
        throw NonConvergence("tridiagonal QL: no convergence for eigenvalue " +
                             std::to_string(l) + " after " + std::to_string(max_sweeps) +
                             " sweeps");

      // Wilkinson-style shift from the leading 2x2 block.
      Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
      Real r = std::hypot(g, Real(1));
      g = d[m] - d[l] + e[l] / (g + copy_sign(r, g));
      Real s = 1, c = 1, p = 0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        Real f = s * e[ii];
        const Real b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == Real(0)) {
          d[ii + 1] -= p;
          e[m] = 0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + Real(2) * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
        for (std::size_t k = 0; k < n; ++k) {
          f = Z(k, ii + 1);
          Z(k, ii + 1) = s * Z(k, ii) + c * f;
          Z(k, ii) = c * Z(k, ii) - s * f;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0;
    } while (m != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  TridiagonalEigen<Real> out;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = d[src];
    // Fix the sign so the first nonnegligible component is positive.
    Real sign = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(Z(i, src)) > Real(1e-8)) {
        sign = Z(i, src) < 0 ? Real(-1) : Real(1);
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.vectors[k * n + i] = sign * Z(i, src);
  }
  return out;
}

template TridiagonalEigen<double> tridiagonal_eigensolve(std::vector<double>,
                                                         std::vector<double>, int);
template TridiagonalEigen<long double> tridiagonal_eigensolve(std::vector<long double>,
                                                              std::vector<long double>, int);

}  // namespace qtransfer
