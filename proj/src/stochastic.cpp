#include "matpow/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "matpow/transforms.hpp"

namespace matpow {
namespace {

constexpr double kStochasticSumTol = 1e-9;

std::vector<double> step(const ComplexMatrix& p, const std::vector<double>& v) {
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += p(i, j).real() * v[j];
  return out;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

StationaryVector stationary_vector(const ComplexMatrix& p, double tol, std::uint64_t max_iter) {
  if (!p.is_real(kRealImagTol)) throw PreconditionError("stationary_vector: matrix must be real");
  for (Complex z : p.data()) {
    if (!(z.real() > 0.0)) throw PreconditionError("stationary_vector: entries must be positive");
  }
  for (double s : column_abs_sums(p)) {
    if (std::abs(s - 1.0) > kStochasticSumTol) {
      throw PreconditionError("stationary_vector: columns must sum to 1");
    }
  }

  const std::size_t d = p.dim();
  std::vector<double> v(d, 1.0 / static_cast<double>(d));
  for (std::uint64_t k = 0; k < max_iter; ++k) {
    std::vector<double> next = step(p, v);
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    for (double& x : next) x /= total;
    const double gap = max_gap(next, v);
    v = std::move(next);
    if (gap <= tol) {
      StationaryVector out;
      out.residual = max_gap(step(p, v), v);
      out.v = std::move(v);
      return out;
    }
  }
  throw ConvergenceError("stationary_vector: no convergence within budget");
}

ComplexMatrix rank_one_limit(const StationaryVector& v, std::size_t d) {
  if (v.v.size() != d) throw DimensionError("rank_one_limit: vector length differs from d");
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = v.v[i];
  return m;
}

}  // namespace matpow
