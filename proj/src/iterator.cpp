#include "matpow/iterator.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <vector>

namespace matpow {
namespace {

constexpr std::array<std::string_view, 4> kVerdictNames = {"NonzeroLimit", "ZeroLimit",
                                                           "Oscillates", "Inconclusive"};

// A genuine cycle repeats its step differences exactly; anything that lost
// more than this fraction over the comparison lag is still settling.
constexpr double kCycleDecayTol = 1e-6;

// True when the step difference at the same phase of a p-cycle, at least
// `window` steps back, was noticeably larger than the current one.
bool still_settling(const std::deque<double>& steps, std::size_t p, std::size_t window) {
  const std::size_t lag = p * ((window + p - 1) / p);
  if (steps.size() <= lag) return true;
  const double now = steps.back();
  const double then = steps[steps.size() - 1 - lag];
  return now < (1.0 - kCycleDecayTol) * then;
}

}  // namespace

void IterationConfig::validate() const {
  if (!(conv_tol > 0.0)) throw PreconditionError("conv_tol must be positive");
  if (!(zero_tol > 0.0)) throw PreconditionError("zero_tol must be positive");
  if (max_iter == 0) throw PreconditionError("max_iter must be positive");
  if (oscillation_window < 2) throw PreconditionError("oscillation_window must be at least 2");
}

std::string_view to_string(NumericVerdict v) { return kVerdictNames[static_cast<std::size_t>(v)]; }

std::optional<NumericVerdict> parse_numeric_verdict(std::string_view s) {
  for (std::size_t k = 0; k < kVerdictNames.size(); ++k)
    if (kVerdictNames[k] == s) return static_cast<NumericVerdict>(k);
  return std::nullopt;
}

IterationVerdict iterate(const ComplexMatrix& b, const IterationConfig& cfg) {
  cfg.validate();
  if (!b.all_finite()) throw OverflowError("iterate: input has non-finite entries");

  const std::size_t window = cfg.oscillation_window;
  std::deque<ComplexMatrix> history;  // X(n-window) .. X(n-1)
  std::deque<double> steps;           // |X(m) - X(m-1)| for the last 2*window values of m
  std::vector<std::size_t> period_run(window + 1, 0);
  std::size_t settled_run = 0;

  IterationVerdict out;
  ComplexMatrix x = b;
  for (std::uint64_t n = 1;; ++n) {
    const double size = max_modulus(x);
    out.iterations_used = n;
    out.final_step_delta = steps.empty() ? 0.0 : steps.back();

    if (size <= cfg.zero_tol) {
      out.verdict = NumericVerdict::ZeroLimit;
      return out;
    }

    if (!history.empty()) {
      const double threshold = cfg.conv_tol * std::min(1.0, size);
      const double step = max_abs_diff(x, history.back());
      steps.push_back(step);
      if (steps.size() > 2 * window) steps.pop_front();
      out.final_step_delta = step;

      settled_run = step <= threshold ? settled_run + 1 : 0;
      if (settled_run >= window) {
        out.verdict = NumericVerdict::NonzeroLimit;
        out.limit = std::move(x);
        return out;
      }

      for (std::size_t p = 2; p <= window; ++p) {
        if (history.size() < p) {
          period_run[p] = 0;
          continue;
        }
        const double gap = max_abs_diff(x, history[history.size() - p]);
        period_run[p] = (gap <= threshold && step > threshold) ? period_run[p] + 1 : 0;
      }
      for (std::size_t p = 2; p <= window; ++p) {
        if (period_run[p] >= window && !still_settling(steps, p, window)) {
          out.verdict = NumericVerdict::Oscillates;
          out.period_detected = p;
          return out;
        }
      }
    }

    if (n >= cfg.max_iter) {
      out.verdict = NumericVerdict::Inconclusive;
      return out;
    }

    history.push_back(x);
    if (history.size() > window) history.pop_front();
    x = multiply(x, b);
  }
}

double fixed_point_residual(const ComplexMatrix& x, const ComplexMatrix& b) {
  return std::max(max_abs_diff(multiply(x, b), x), max_abs_diff(multiply(b, x), x));
}

}  // namespace matpow
