#pragma once

// Reference computations used as independent checks in the test suites.
// Nothing here calls into the library's arithmetic kernels.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "matpow/matrix.hpp"

namespace matpow::testing {

using Grid = std::vector<std::vector<std::complex<double>>>;

inline Grid to_grid(const ComplexMatrix& m) {
  Grid g(m.dim(), std::vector<std::complex<double>>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) g[i][j] = m(i, j);
  return g;
}

/// Textbook triple loop on std::complex.
inline Grid reference_multiply(const Grid& a, const Grid& b) {
  const std::size_t d = a.size();
  Grid c(d, std::vector<std::complex<double>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// a^n by n - 1 successive reference products (n >= 1).
inline Grid reference_power(const Grid& a, unsigned n) {
  Grid r = a;
  for (unsigned k = 1; k < n; ++k) r = reference_multiply(r, a);
  return r;
}

inline double grid_gap(const Grid& a, const ComplexMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[i][j] - b(i, j)));
  return worst;
}

/// Roots of z^2 - tr z + det for a 2x2 matrix.
inline std::array<std::complex<double>, 2> eigenvalues_2x2(const ComplexMatrix& m) {
  const std::complex<double> tr = m(0, 0) + m(1, 1);
  const std::complex<double> det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const std::complex<double> disc = std::sqrt(tr * tr - 4.0 * det);
  return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

/// Solves (P - I) v = 0 with sum v = 1 by Gaussian elimination with partial
/// pivoting: the last row of P - I is replaced by the normalization row.
inline std::vector<double> stationary_by_elimination(const ComplexMatrix& p) {
  const std::size_t d = p.dim();
  std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a[i][j] = p(i, j).real() - (i == j ? 1.0 : 0.0);
  for (std::size_t j = 0; j < d; ++j) a[d - 1][j] = 1.0;
  a[d - 1][d] = 1.0;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = a[i][d] / a[i][i];
  return v;
}

/// Random complex matrix whose columns have modulus sums exactly `colsum`.
inline ComplexMatrix random_column_scaled(std::mt19937_64& rng, std::size_t d, double colsum) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_real_distribution<double> ang(-3.14159, 3.14159);
  ComplexMatrix m(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> mod(d);
    double total = 0.0;
    for (double& x : mod) total += (x = u(rng));
    for (std::size_t i = 0; i < d; ++i) m(i, j) = std::polar(colsum * mod[i] / total, ang(rng));
  }
  return m;
}

/// Real positive column-stochastic matrix.
inline ComplexMatrix random_stochastic(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  ComplexMatrix m(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> col(d);
    double total = 0.0;
    for (double& x : col) total += (x = u(rng));
    for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i] / total;
  }
  return m;
}

// Real 2x2 with nonnegative off-diagonals, diagonals of either sign and
// column modulus sums in [0.5, 1], so every power stays entrywise <= 1.
inline ComplexMatrix random_real_2x2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  ComplexMatrix a(2);
  for (std::size_t j = 0; j < 2; ++j) {
    const double total = 0.5 + 0.5 * unit(rng);
    const double share = unit(rng);
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    a(j, j) = sign * total * share;
    a(1 - j, j) = total * (1.0 - share);
  }
  return a;
}

inline double random_phi(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  for (;;) {
    const double phi = angle(rng);
    if (std::abs(phi - std::numbers::pi) > 1e-6) return phi;
  }
}

}  // namespace matpow::testing
