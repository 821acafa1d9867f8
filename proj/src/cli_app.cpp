#include "matpow/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "matpow/analysis.hpp"
#include "matpow/generator.hpp"

namespace matpow::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct SourceFlags {
  std::string input;
  std::string input_dir;
  std::string family;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  double min_modulus = kDefaultMinModulus;
};

struct AnalyzeFlags {
  SourceFlags source;
  AnalysisOptions options;
  std::string format = "text";
  bool strict = false;
};

// Outcome of one analysis, including failures that map to exit codes.
struct Outcome {
  std::optional<AnalysisReport> report;
  std::string error;
  int code = kExitOk;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ComplexMatrix generated_matrix(const SourceFlags& s) {
  const auto kind = parse_family(s.family);
  if (!kind) throw ParseError("--generate", "unknown family '" + s.family + "'");
  return generate(MatrixFamily{*kind, s.d, s.min_modulus}, s.seed);
}

Outcome analyze_one(const std::function<ComplexMatrix()>& load, const AnalyzeFlags& flags) {
  Outcome out;
  try {
    out.report = analyze(load(), flags.options);
    if (flags.strict && out.report->numeric.verdict == NumericVerdict::Inconclusive) {
      out.code = kExitStrictFailure;
    }
  } catch (const OverflowError& e) {
    out.error = e.what();
    out.code = kExitStrictFailure;
  } catch (const Error& e) {
    out.error = e.what();
    out.code = kExitInputError;
  }
  return out;
}

void emit_single(const Outcome& o, const AnalyzeFlags& flags, std::ostream& out, std::ostream& err) {
  if (!o.report) {
    err << "error: " << o.error << '\n';
    return;
  }
  if (flags.format == "json") {
    out << report_to_json(*o.report).dump(2) << '\n';
  } else {
    out << render_text(*o.report);
  }
  if (o.code == kExitStrictFailure) err << "error: numeric oracle was inconclusive (--strict)\n";
}

int run_batch(const AnalyzeFlags& flags, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(flags.source.input_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (ec) {
    err << "error: cannot read directory " << flags.source.input_dir << ": " << ec.message() << '\n';
    return kExitInputError;
  }
  std::sort(files.begin(), files.end());

  std::vector<std::future<Outcome>> jobs;
  jobs.reserve(files.size());
  for (const fs::path& f : files) {
    jobs.push_back(std::async(std::launch::async, [f, &flags] {
      return analyze_one([&f] { return parse_matrix_file(read_file(f)); }, flags);
    }));
  }

  int code = kExitOk;
  json all = json::array();
  for (std::size_t k = 0; k < files.size(); ++k) {
    const Outcome o = jobs[k].get();
    if (o.code == kExitInputError) {
      code = kExitInputError;
    } else if (o.code == kExitStrictFailure && code == kExitOk) {
      code = kExitStrictFailure;
    }
    const std::string name = files[k].filename().string();
    if (flags.format == "json") {
      json item = {{"file", name}};
      if (o.report) item["report"] = report_to_json(*o.report);
      if (!o.error.empty()) item["error"] = o.error;
      all.push_back(std::move(item));
    } else {
      out << "== " << name << " ==\n";
      if (o.report) out << render_text(*o.report);
      if (!o.error.empty()) out << "error: " << o.error << '\n';
    }
  }
  if (flags.format == "json") out << all.dump(2) << '\n';
  return code;
}

int run_analyze(const AnalyzeFlags& flags, std::ostream& out, std::ostream& err) {
  try {
    flags.options.iteration.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  if (!flags.source.input_dir.empty()) return run_batch(flags, out, err);

  std::function<ComplexMatrix()> load;
  if (!flags.source.input.empty()) {
    load = [&] { return parse_matrix_file(read_file(flags.source.input)); };
  } else {
    load = [&] { return generated_matrix(flags.source); };
  }
  const Outcome o = analyze_one(load, flags);
  emit_single(o, flags, out, err);
  return o.code;
}

int run_generate(const SourceFlags& s, const std::string& output, std::ostream& out,
                 std::ostream& err) {
  try {
    const std::string doc = matrix_to_json(generated_matrix(s)).dump(2) + "\n";
    if (output.empty()) {
      out << doc;
    } else {
      std::ofstream file(output, std::ios::binary);
      if (!file) throw ParseError(output, "cannot open for writing");
      file << doc;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

void add_family_flags(CLI::App& cmd, SourceFlags& s, bool required) {
  std::vector<std::string> names;
  for (FamilyKind k : all_families()) names.emplace_back(family_name(k));
  auto* fam = cmd.add_option(required ? "--family" : "--generate", s.family, "Matrix family")
                  ->check(CLI::IsMember(names));
  if (required) fam->required();
  cmd.add_option("--d", s.d, "Matrix dimension")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", s.seed, "Generator seed");
  cmd.add_option("--min-modulus", s.min_modulus, "Smallest entry modulus")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power-sequence convergence analysis for complex matrices"};
  app.require_subcommand(1);

  AnalyzeFlags flags;
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "Classify a matrix and run the numeric oracle");
  auto* input = analyze_cmd->add_option("--input", flags.source.input, "Matrix JSON file");
  auto* input_dir =
      analyze_cmd->add_option("--input-dir", flags.source.input_dir, "Analyze every *.json in a directory");
  add_family_flags(*analyze_cmd, flags.source, false);
  auto* gen = analyze_cmd->get_option("--generate");
  input->excludes(input_dir)->excludes(gen);
  input_dir->excludes(gen);
  analyze_cmd->add_option("--tol", flags.options.tol, "Classifier and normalization tolerance")
      ->capture_default_str();
  analyze_cmd->add_option("--conv-tol", flags.options.iteration.conv_tol, "Oracle step tolerance")
      ->capture_default_str();
  analyze_cmd->add_option("--zero-tol", flags.options.iteration.zero_tol, "Oracle zero threshold")
      ->capture_default_str();
  analyze_cmd->add_option("--max-iter", flags.options.iteration.max_iter, "Oracle step budget")
      ->capture_default_str();
  analyze_cmd->add_option("--window", flags.options.iteration.oscillation_window,
                          "Consecutive steps required for a verdict")
      ->capture_default_str();
  analyze_cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  analyze_cmd->add_flag("--transpose", flags.options.transpose,
                        "Input is row-normalized; transpose before analysis");
  analyze_cmd->add_flag("--strict", flags.strict, "Exit 3 when the oracle is inconclusive");

  SourceFlags gen_flags;
  std::string output;
  CLI::App* generate_cmd = app.add_subcommand("generate", "Write a generated matrix as JSON");
  add_family_flags(*generate_cmd, gen_flags, true);
  generate_cmd->add_option("--output", output, "Destination file (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  if (analyze_cmd->parsed()) {
    if (flags.source.input.empty() && flags.source.input_dir.empty() && flags.source.family.empty()) {
      err << "error: one of --input, --input-dir or --generate is required\n";
      return kExitInputError;
    }
    return run_analyze(flags, out, err);
  }
  return run_generate(gen_flags, output, out, err);
}

}  // namespace matpow::cli
