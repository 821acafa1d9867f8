#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matpow/matrix.hpp"

namespace matpow {

inline constexpr double kDefaultClassifyTol = 1e-9;
// Angular width (radians) of the excluded negative real axis for b12.
inline constexpr double kNegativeAxisAngle = 1e-9;

enum class AnalyticVerdict { NonzeroLimit, NoNonzeroLimit, OutOfScope };

std::string_view to_string(AnalyticVerdict v);
std::optional<AnalyticVerdict> parse_analytic_verdict(std::string_view s);

/// Per-condition outcome of the analytic test.
///
/// `offdiag_product_positive` is set only for 2x2 input and
/// `all_entries_positive_real` only for d >= 3; both are empty for d < 2.
struct ConditionDiagnostics {
  std::vector<bool> diagonal_positive_real;
  std::optional<bool> offdiag_product_positive;
  bool offdiag_negative_real_present = false;
  std::optional<bool> all_entries_positive_real;
  double tolerance_used = kDefaultClassifyTol;

  friend bool operator==(const ConditionDiagnostics&, const ConditionDiagnostics&) = default;
};

struct ConvergenceClass {
  AnalyticVerdict verdict = AnalyticVerdict::OutOfScope;
  ConditionDiagnostics diagnostics;
  std::optional<std::string> scope_reason;

  friend bool operator==(const ConvergenceClass&, const ConvergenceClass&) = default;
};

/// |im z| <= tol and re z > tol.
bool is_positive_real(Complex z, double tol);
/// |im z| <= tol and re z < -tol.
bool is_negative_real(Complex z, double tol);

/// Decides from the entries alone whether the powers of `m` converge to a
/// nonzero matrix.
///
/// Inputs outside the standing assumptions (d < 2, a zero entry, or a column
/// modulus sum away from 1 by more than `tol`) yield OutOfScope.
///
/// d = 2: NonzeroLimit iff both diagonal entries are positive real, the
/// off-diagonal product b12*b21 has argument 0 within `tol` radians, and b12
/// is not on the negative real axis (within kNegativeAxisAngle).
///
/// d >= 3: NonzeroLimit iff every entry is positive real.
ConvergenceClass classify(const ComplexMatrix& m, double tol = kDefaultClassifyTol);

}  // namespace matpow
