#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "matpow/matrix.hpp"

namespace matpow {

struct IterationConfig {
  double conv_tol = 1e-10;
  double zero_tol = 1e-12;
  std::uint64_t max_iter = 100'000;
  std::size_t oscillation_window = 8;

  /// Throws PreconditionError unless both tolerances are positive, the
  /// budget is nonzero and the window is at least 2.
  void validate() const;
};

enum class NumericVerdict { NonzeroLimit, ZeroLimit, Oscillates, Inconclusive };

std::string_view to_string(NumericVerdict v);
std::optional<NumericVerdict> parse_numeric_verdict(std::string_view s);

struct IterationVerdict {
  NumericVerdict verdict = NumericVerdict::Inconclusive;
  std::optional<ComplexMatrix> limit;  // set iff verdict == NonzeroLimit
  std::uint64_t iterations_used = 0;
  double final_step_delta = 0.0;
  std::optional<std::size_t> period_detected;  // set iff verdict == Oscillates

  friend bool operator==(const IterationVerdict&, const IterationVerdict&) = default;
};

/// Walks X(1) = B, X(n+1) = X(n) * B one step at a time and reports how the
/// sequence behaves.
///
/// Each step is compared against the threshold tol * min(1, max|X(n+1)|), so
/// for iterates of order one the tests are absolute and for small iterates
/// they become relative to the iterate size. Checks run in this order:
///
///  - ZeroLimit: max|X(n)| <= zero_tol.
///  - NonzeroLimit: the step difference |X(n+1) - X(n)| has stayed under the
///    threshold for `oscillation_window` consecutive steps.
///  - Oscillates: for the smallest p in [2, window], |X(n) - X(n-p)| has
///    stayed under the threshold for `window` steps while the step
///    difference stayed above it, and the step difference has not shrunk
///    compared to the same phase of the cycle at least `window` steps back.
///  - Inconclusive once `max_iter` steps are used.
///
/// Throws OverflowError if an iterate becomes non-finite and
/// PreconditionError for an invalid config.
IterationVerdict iterate(const ComplexMatrix& b, const IterationConfig& cfg = {});

/// max(|X*B - X|, |B*X - X|).
double fixed_point_residual(const ComplexMatrix& x, const ComplexMatrix& b);

}  // namespace matpow
