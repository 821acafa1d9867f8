#include "matpow/classifier.hpp"

#include <array>
#include <numbers>
#include <cmath>
#include <sstream>

namespace matpow {
namespace {

constexpr std::array<std::string_view, 3> kVerdictNames = {"NonzeroLimit", "NoNonzeroLimit",
                                                           "OutOfScope"};

ConditionDiagnostics diagnose(const ComplexMatrix& m, double tol) {
  const std::size_t d = m.dim();
  ConditionDiagnostics diag;
  diag.tolerance_used = tol;
  if (d < 2) return diag;

  diag.diagonal_positive_real.resize(d);
  for (std::size_t i = 0; i < d; ++i) diag.diagonal_positive_real[i] = is_positive_real(m(i, i), tol);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && is_negative_real(m(i, j), tol)) diag.offdiag_negative_real_present = true;

  if (d == 2) {
    // Only the argument of the product matters; comparing b12*b21 with its
    // modulus directly would make the test depend on entry size.
    const double arg = std::arg(m(0, 1) * m(1, 0));
    diag.offdiag_product_positive = std::abs(arg) <= tol;
  } else {
    bool all = true;
    for (Complex z : m.data()) all = all && is_positive_real(z, tol);
    diag.all_entries_positive_real = all;
  }
  return diag;
}

std::string out_of_scope_reason(const ComplexMatrix& m, const NormalizationReport& norm) {
  std::ostringstream why;
  if (m.dim() < 2) {
    why << "dimension " << m.dim() << " < 2";
  } else if (!norm.all_nonzero) {
    why << "zero entry present (min modulus " << norm.min_modulus << ")";
  } else {
    why << "column modulus sums deviate from 1 by " << norm.max_deviation;
  }
  return why.str();
}

}  // namespace

std::string_view to_string(AnalyticVerdict v) { return kVerdictNames[static_cast<std::size_t>(v)]; }

std::optional<AnalyticVerdict> parse_analytic_verdict(std::string_view s) {
  for (std::size_t k = 0; k < kVerdictNames.size(); ++k)
    if (kVerdictNames[k] == s) return static_cast<AnalyticVerdict>(k);
  return std::nullopt;
}

bool is_positive_real(Complex z, double tol) {
  return std::abs(z.imag()) <= tol && z.real() > tol;
}

bool is_negative_real(Complex z, double tol) {
  return std::abs(z.imag()) <= tol && z.real() < -tol;
}

ConvergenceClass classify(const ComplexMatrix& m, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("classify: tolerance must be positive");

  ConvergenceClass out;
  out.diagnostics = diagnose(m, tol);

  const NormalizationReport norm = validate_normalized(m, tol, kDefaultZeroThreshold);
  if (m.dim() < 2 || !norm.normalized || !norm.all_nonzero) {
    out.verdict = AnalyticVerdict::OutOfScope;
    out.scope_reason = out_of_scope_reason(m, norm);
    return out;
  }

  const ConditionDiagnostics& diag = out.diagnostics;
  bool nonzero = false;
  if (m.dim() == 2) {
    const bool diagonal_ok = diag.diagonal_positive_real[0] && diag.diagonal_positive_real[1];
    // Off-diagonals on the negative real axis are excluded from the 2x2
    // characterization and reported as having no nonzero limit. The axis
    // test has its own fixed width so that `tol` only ever relaxes.
    const bool on_negative_axis =
        std::abs(std::abs(std::arg(m(0, 1))) - std::numbers::pi) <= kNegativeAxisAngle;
    nonzero = diagonal_ok && *diag.offdiag_product_positive && !on_negative_axis;
  } else {
    nonzero = *diag.all_entries_positive_real;
  }
  out.verdict = nonzero ? AnalyticVerdict::NonzeroLimit : AnalyticVerdict::NoNonzeroLimit;
  return out;
}

}  // namespace matpow
