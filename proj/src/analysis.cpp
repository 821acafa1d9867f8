#include "matpow/analysis.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <regex>
#include <sstream>

#include <openssl/evp.h>

namespace matpow {
namespace {

using nlohmann::json;

std::string field(const std::string& parent, std::size_t index) {
  return parent + "[" + std::to_string(index) + "]";
}

double parse_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ParseError(where, "value is not finite");
  return x;
}

template <class F>
double elapsed_ms(F&& stage) {
  const auto start = std::chrono::steady_clock::now();
  stage();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

json optional_json(const auto& value) {
  if (value) return json(*value);
  return json(nullptr);
}

}  // namespace

ComplexMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("document", "expected a JSON object");
  if (!doc.contains("d")) throw ParseError("d", "missing field");
  if (!doc.contains("entries")) throw ParseError("entries", "missing field");
  const json& jd = doc.at("d");
  if (!jd.is_number_integer() || jd.get<long long>() < 1) {
    throw ParseError("d", "expected a positive integer");
  }
  const auto d = static_cast<std::size_t>(jd.get<long long>());
  const json& rows = doc.at("entries");
  if (!rows.is_array()) throw ParseError("entries", "expected an array of rows");
  if (rows.size() != d) {
    throw ParseError("entries", "has " + std::to_string(rows.size()) + " rows, expected d = " +
                                    std::to_string(d));
  }
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::string row_name = field("entries", i);
    const json& row = rows[i];
    if (!row.is_array()) throw ParseError(row_name, "expected an array of entries");
    if (row.size() != d) {
      throw ParseError(row_name, "row length " + std::to_string(row.size()) + " differs from d = " +
                                     std::to_string(d));
    }
    for (std::size_t j = 0; j < d; ++j) {
      const std::string name = field(row_name, j);
      const json& z = row[j];
      if (!z.is_array() || z.size() != 2) throw ParseError(name, "expected [re, im]");
      m(i, j) = Complex(parse_number(z[0], field(name, 0)), parse_number(z[1], field(name, 1)));
    }
  }
  return m;
}

ComplexMatrix parse_matrix_file(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    std::string where = "document";
    std::cmatch match;
    if (std::regex_search(e.what(), match, std::regex(R"(line \d+, column \d+)"))) where = match.str();
    throw ParseError(where, e.what());
  } catch (const json::out_of_range& e) {
    // Number literals beyond double range, e.g. 1e999.
    throw ParseError("document", std::string("non-finite value: ") + e.what());
  }
  return matrix_from_json(doc);
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (Complex z : m.row(i)) row.push_back({z.real(), z.imag()});
    rows.push_back(std::move(row));
  }
  return {{"d", m.dim()}, {"entries", std::move(rows)}};
}

std::string input_digest(const ComplexMatrix& m) {
  const std::string canonical = matrix_to_json(m).dump();
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), hash, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("input_digest: SHA-256 failed");
  }
  std::ostringstream hex;
  hex << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int k = 0; k < len; ++k) hex << std::setw(2) << static_cast<int>(hash[k]);
  return hex.str();
}

bool same_outcome(const AnalysisReport& a, const AnalysisReport& b) {
  return a.input_digest == b.input_digest && a.normalization == b.normalization &&
         a.analytic == b.analytic && a.numeric == b.numeric && a.agreement == b.agreement &&
         a.limit_summary == b.limit_summary;
}

AnalysisReport analyze(const ComplexMatrix& input, const AnalysisOptions& opts) {
  const ComplexMatrix m = opts.transpose ? input.transposed() : input;
  AnalysisReport r;
  r.input_digest = input_digest(m);
  r.timings.normalization_ms =
      elapsed_ms([&] { r.normalization = validate_normalized(m, opts.tol, kDefaultZeroThreshold); });
  r.timings.classify_ms = elapsed_ms([&] { r.analytic = classify(m, opts.tol); });
  r.timings.iterate_ms = elapsed_ms([&] { r.numeric = iterate(m, opts.iteration); });

  const bool analytic_nonzero = r.analytic.verdict == AnalyticVerdict::NonzeroLimit;
  const bool numeric_nonzero = r.numeric.verdict == NumericVerdict::NonzeroLimit;
  r.agreement = r.numeric.verdict != NumericVerdict::Inconclusive && analytic_nonzero == numeric_nonzero;
  if (r.numeric.limit) {
    r.limit_summary = LimitSummary{max_modulus(*r.numeric.limit),
                                   fixed_point_residual(*r.numeric.limit, m)};
  }
  return r;
}

json report_to_json(const AnalysisReport& r) {
  const NormalizationReport& n = r.normalization;
  const ConditionDiagnostics& dg = r.analytic.diagnostics;
  const IterationVerdict& it = r.numeric;

  json limit_summary = nullptr;
  if (r.limit_summary) {
    limit_summary = {{"max_entry_modulus", r.limit_summary->max_entry_modulus},
                     {"fixed_point_residual", r.limit_summary->fixed_point_residual}};
  }
  return {
      {"input_digest", r.input_digest},
      {"normalization",
       {{"column_sums", n.column_sums},
        {"max_deviation", n.max_deviation},
        {"min_modulus", n.min_modulus},
        {"normalized", n.normalized},
        {"all_nonzero", n.all_nonzero},
        {"tolerance", n.tolerance},
        {"zero_threshold", n.zero_threshold}}},
      {"analytic",
       {{"verdict", to_string(r.analytic.verdict)},
        {"diagnostics",
         {{"diagonal_positive_real", dg.diagonal_positive_real},
          {"offdiag_product_positive", optional_json(dg.offdiag_product_positive)},
          {"offdiag_negative_real_present", dg.offdiag_negative_real_present},
          {"all_entries_positive_real", optional_json(dg.all_entries_positive_real)},
          {"tolerance_used", dg.tolerance_used}}},
        {"scope_reason", optional_json(r.analytic.scope_reason)}}},
      {"numeric",
       {{"verdict", to_string(it.verdict)},
        {"limit", it.limit ? matrix_to_json(*it.limit) : json(nullptr)},
        {"iterations_used", it.iterations_used},
        {"final_step_delta", it.final_step_delta},
        {"period_detected", optional_json(it.period_detected)}}},
      {"agreement", r.agreement},
      {"limit_summary", std::move(limit_summary)},
      {"timings",
       {{"normalization_ms", r.timings.normalization_ms},
        {"classify_ms", r.timings.classify_ms},
        {"iterate_ms", r.timings.iterate_ms}}},
  };
}

AnalysisReport report_from_json(const json& j) {
  AnalysisReport r;
  r.input_digest = j.at("input_digest").get<std::string>();

  const json& n = j.at("normalization");
  r.normalization.column_sums = n.at("column_sums").get<std::vector<double>>();
  r.normalization.max_deviation = n.at("max_deviation").get<double>();
  r.normalization.min_modulus = n.at("min_modulus").get<double>();
  r.normalization.normalized = n.at("normalized").get<bool>();
  r.normalization.all_nonzero = n.at("all_nonzero").get<bool>();
  r.normalization.tolerance = n.at("tolerance").get<double>();
  r.normalization.zero_threshold = n.at("zero_threshold").get<double>();

  const json& a = j.at("analytic");
  const auto verdict = parse_analytic_verdict(a.at("verdict").get<std::string>());
  if (!verdict) throw ParseError("analytic.verdict", "unknown verdict");
  r.analytic.verdict = *verdict;
  const json& dg = a.at("diagnostics");
  r.analytic.diagnostics.diagonal_positive_real =
      dg.at("diagonal_positive_real").get<std::vector<bool>>();
  if (!dg.at("offdiag_product_positive").is_null())
    r.analytic.diagnostics.offdiag_product_positive = dg.at("offdiag_product_positive").get<bool>();
  r.analytic.diagnostics.offdiag_negative_real_present =
      dg.at("offdiag_negative_real_present").get<bool>();
  if (!dg.at("all_entries_positive_real").is_null())
    r.analytic.diagnostics.all_entries_positive_real = dg.at("all_entries_positive_real").get<bool>();
  r.analytic.diagnostics.tolerance_used = dg.at("tolerance_used").get<double>();
  if (!a.at("scope_reason").is_null()) r.analytic.scope_reason = a.at("scope_reason").get<std::string>();

  const json& it = j.at("numeric");
  const auto nverdict = parse_numeric_verdict(it.at("verdict").get<std::string>());
  if (!nverdict) throw ParseError("numeric.verdict", "unknown verdict");
  r.numeric.verdict = *nverdict;
  if (!it.at("limit").is_null()) r.numeric.limit = matrix_from_json(it.at("limit"));
  r.numeric.iterations_used = it.at("iterations_used").get<std::uint64_t>();
  r.numeric.final_step_delta = it.at("final_step_delta").get<double>();
  if (!it.at("period_detected").is_null())
    r.numeric.period_detected = it.at("period_detected").get<std::size_t>();

  r.agreement = j.at("agreement").get<bool>();
  if (const json& ls = j.at("limit_summary"); !ls.is_null()) {
    r.limit_summary = LimitSummary{ls.at("max_entry_modulus").get<double>(),
                                   ls.at("fixed_point_residual").get<double>()};
  }
  const json& t = j.at("timings");
  r.timings = {t.at("normalization_ms").get<double>(), t.at("classify_ms").get<double>(),
               t.at("iterate_ms").get<double>()};
  return r;
}

std::string render_text(const AnalysisReport& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  const auto yes_no = [](bool b) { return b ? "yes" : "no"; };
  os << "input            " << r.input_digest << '\n';
  os << "dimension        " << r.normalization.column_sums.size() << '\n';
  os << "column sums     ";
  for (double s : r.normalization.column_sums) os << ' ' << s;
  os << '\n';
  os << "normalized       " << yes_no(r.normalization.normalized) << " (max deviation "
     << r.normalization.max_deviation << ")\n";
  os << "nonzero entries  " << yes_no(r.normalization.all_nonzero) << " (min modulus "
     << r.normalization.min_modulus << ")\n";
  os << "analytic         " << to_string(r.analytic.verdict);
  if (r.analytic.scope_reason) os << " (" << *r.analytic.scope_reason << ")";
  os << '\n';
  const ConditionDiagnostics& dg = r.analytic.diagnostics;
  if (dg.offdiag_product_positive)
    os << "  b12*b21 > 0    " << yes_no(*dg.offdiag_product_positive) << '\n';
  if (dg.all_entries_positive_real)
    os << "  all positive   " << yes_no(*dg.all_entries_positive_real) << '\n';
  os << "  negative off-diagonal  " << yes_no(dg.offdiag_negative_real_present) << '\n';
  os << "numeric          " << to_string(r.numeric.verdict) << " after " << r.numeric.iterations_used
     << " steps (last step " << r.numeric.final_step_delta << ")";
  if (r.numeric.period_detected) os << ", period " << *r.numeric.period_detected;
  os << '\n';
  if (r.limit_summary) {
    os << "limit            max modulus " << r.limit_summary->max_entry_modulus
       << ", fixed-point residual " << r.limit_summary->fixed_point_residual << '\n';
  }
  os << "agreement        " << yes_no(r.agreement) << '\n';
  os << "timings (ms)     normalize " << r.timings.normalization_ms << ", classify "
     << r.timings.classify_ms << ", iterate " << r.timings.iterate_ms << '\n';
  return os.str();
}

}  // namespace matpow
