#include "matpow/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace matpow {
namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw DimensionError("matrix dimension must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& r : rows) {
    if (r.size() != dim_) throw DimensionError("matrix rows must have length " + std::to_string(dim_));
    std::copy(r.begin(), r.end(), entries_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    ++i;
  }
  if (!all_finite()) throw PreconditionError("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  ComplexMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw DimensionError("row " + std::to_string(i) + " has length " +
                           std::to_string(rows[i].size()) + ", expected " +
                           std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  if (!m.all_finite()) throw PreconditionError("matrix entries must be finite");
  return m;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), finite);
}

bool ComplexMatrix::is_real(double imag_tol) const noexcept {
  return std::all_of(entries_.begin(), entries_.end(),
                     [imag_tol](Complex z) { return std::abs(z.imag()) <= imag_tol; });
}

ComplexMatrix ComplexMatrix::transposed() const {
  ComplexMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

// Hot path of the oracle. Works on the interleaved (re, im) layout that
// std::complex guarantees, which keeps the inner loop free of the library's
// NaN-recovery branches.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "multiply");
  const std::size_t d = a.dim();
  ComplexMatrix c(d);
  const auto* pa = reinterpret_cast<const double*>(a.data().data());
  const auto* pb = reinterpret_cast<const double*>(b.data().data());
  auto* pc = reinterpret_cast<double*>(&c(0, 0));
  for (std::size_t i = 0; i < d; ++i) {
    double* crow = pc + 2 * i * d;
    for (std::size_t k = 0; k < d; ++k) {
      const double ar = pa[2 * (i * d + k)];
      const double ai = pa[2 * (i * d + k) + 1];
      const double* brow = pb + 2 * k * d;
      for (std::size_t j = 0; j < d; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        crow[2 * j] += ar * br - ai * bi;
        crow[2 * j + 1] += ar * bi + ai * br;
      }
    }
  }
  if (!c.all_finite()) throw OverflowError("multiply: non-finite entry in product");
  return c;
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& m) {
  ComplexMatrix r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = s * m(i, j);
  return r;
}

ComplexMatrix power(const ComplexMatrix& m, std::uint64_t n) {
  ComplexMatrix result = ComplexMatrix::identity(m.dim());
  ComplexMatrix base = m;
  while (n > 0) {
    if (n & 1U) result = multiply(result, base);
    n >>= 1U;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

std::vector<double> column_abs_sums(const ComplexMatrix& m) {
  std::vector<double> sums(m.dim(), 0.0);
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) sums[j] += std::abs(m(i, j));
  return sums;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

double max_modulus(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Complex z : m.data()) worst = std::max(worst, std::abs(z));
  return worst;
}

double min_modulus(const ComplexMatrix& m) {
  double least = std::abs(m.data()[0]);
  for (Complex z : m.data()) least = std::min(least, std::abs(z));
  return least;
}

NormalizationReport validate_normalized(const ComplexMatrix& m, double tol,
                                        double zero_threshold) {
  NormalizationReport r;
  r.tolerance = tol;
  r.zero_threshold = zero_threshold;
  r.column_sums = column_abs_sums(m);
  for (double s : r.column_sums) r.max_deviation = std::max(r.max_deviation, std::abs(s - 1.0));
  r.min_modulus = min_modulus(m);
  r.normalized = r.max_deviation <= tol;
  r.all_nonzero = r.min_modulus > zero_threshold;
  return r;
}

}  // namespace matpow
