#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "matpow/errors.hpp"

namespace matpow {

using Complex = std::complex<double>;

inline constexpr double kDefaultNormalizationTol = 1e-9;
inline constexpr double kDefaultZeroThreshold = 1e-12;

/// Dense square matrix of complex scalars, stored row-major.
///
/// Construction from external data rejects NaN and infinite entries. The
/// mutable element accessor exists for builders (generators, parsers); code
/// that writes through it is responsible for keeping entries finite.
class ComplexMatrix {
 public:
  /// Zero matrix of dimension `dim` (must be >= 1).
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }

  [[nodiscard]] std::span<const Complex> row(std::size_t i) const {
    return {entries_.data() + i * dim_, dim_};
  }
  [[nodiscard]] std::span<const Complex> data() const noexcept { return entries_; }

  [[nodiscard]] bool all_finite() const noexcept;
  [[nodiscard]] bool is_real(double imag_tol) const noexcept;
  [[nodiscard]] ComplexMatrix transposed() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply(a, b);
}
ComplexMatrix operator*(Complex s, const ComplexMatrix& m);

/// m^n by repeated squaring; power(m, 0) is the identity.
ComplexMatrix power(const ComplexMatrix& m, std::uint64_t n);

/// Entry j is the sum over rows of |m(i, j)|.
std::vector<double> column_abs_sums(const ComplexMatrix& m);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

double max_modulus(const ComplexMatrix& m);
double min_modulus(const ComplexMatrix& m);

struct NormalizationReport {
  std::vector<double> column_sums;
  double max_deviation = 0.0;
  double min_modulus = 0.0;
  bool normalized = false;
  bool all_nonzero = false;
  double tolerance = kDefaultNormalizationTol;
  double zero_threshold = kDefaultZeroThreshold;

  friend bool operator==(const NormalizationReport&, const NormalizationReport&) = default;
};

/// Checks every column modulus sum against 1 and every entry against zero.
/// Violations are reported, not thrown.
NormalizationReport validate_normalized(const ComplexMatrix& m,
                                        double tol = kDefaultNormalizationTol,
                                        double zero_threshold = kDefaultZeroThreshold);

}  // namespace matpow
