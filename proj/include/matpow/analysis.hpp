#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "matpow/classifier.hpp"
#include "matpow/iterator.hpp"
#include "matpow/matrix.hpp"

namespace matpow {

/// Malformed matrix document. `where` names the offending line/column or
/// JSON field.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  [[nodiscard]] const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Parses {"d": N, "entries": [[[re, im], ...], ...]} (row-major).
ComplexMatrix parse_matrix_file(std::string_view bytes);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// "sha256:" followed by the hex digest of the compact matrix document.
std::string input_digest(const ComplexMatrix& m);

struct LimitSummary {
  double max_entry_modulus = 0.0;
  double fixed_point_residual = 0.0;
  friend bool operator==(const LimitSummary&, const LimitSummary&) = default;
};

struct StageTimings {
  double normalization_ms = 0.0;
  double classify_ms = 0.0;
  double iterate_ms = 0.0;
};

struct AnalysisReport {
  std::string input_digest;
  NormalizationReport normalization;
  ConvergenceClass analytic;
  IterationVerdict numeric;
  bool agreement = false;
  std::optional<LimitSummary> limit_summary;
  StageTimings timings;
};

/// Equality over every field except timings.
bool same_outcome(const AnalysisReport& a, const AnalysisReport& b);

struct AnalysisOptions {
  double tol = kDefaultClassifyTol;
  IterationConfig iteration;
  bool transpose = false;
};

/// Runs normalization, the analytic classifier and the numeric oracle on
/// one matrix. Overflow inside the oracle propagates as OverflowError.
AnalysisReport analyze(const ComplexMatrix& input, const AnalysisOptions& opts = {});

nlohmann::json report_to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::json& j);
std::string render_text(const AnalysisReport& r);

}  // namespace matpow
