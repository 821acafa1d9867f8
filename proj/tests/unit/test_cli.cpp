#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "matpow/analysis.hpp"
#include "matpow/cli.hpp"
#include "matpow/generator.hpp"
#include "support/golden.hpp"

using namespace matpow;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kGolden = MATPOW_GOLDEN_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return kGolden + "/" + name; }

void check_against(const Run& r, const std::string& report) {
  REQUIRE(r.code == cli::kExitOk);
  const json expected = json::parse(testing::read_text(golden(report)));
  const std::string mismatch = testing::golden_mismatch(expected, json::parse(r.out));
  CHECK_MESSAGE(mismatch.empty(), mismatch);
}

fs::path scratch_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("matpow_cli_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("golden reports") {
    check_against(invoke({"analyze", "--input", golden("j.matrix.json"), "--format", "json"}),
                  "j.report.json");
    check_against(invoke({"analyze", "--input", golden("half_i.matrix.json"), "--format", "json"}),
                  "half_i.report.json");
    check_against(invoke({"analyze", "--generate", "substochastic", "--d", "3", "--seed", "7",
                          "--format", "json"}),
                  "substochastic_d3_s7.report.json");
  }

  TEST_CASE("timings are reported but not compared") {
    const Run r = invoke({"analyze", "--input", golden("j.matrix.json"), "--format", "json"});
    const json doc = json::parse(r.out);
    for (const char* k : {"normalization_ms", "classify_ms", "iterate_ms"}) {
      CHECK(doc["timings"][k].get<double>() >= 0.0);
    }
  }

  TEST_CASE("comparator notices drift") {
    json expected = json::parse(testing::read_text(golden("j.report.json")));
    json actual = expected;
    actual["numeric"]["iterations_used"] = 1000;
    CHECK_FALSE(testing::golden_mismatch(expected, actual).empty());
    actual = expected;
    actual["extra"] = 1;
    CHECK_FALSE(testing::golden_mismatch(expected, actual).empty());
    actual = expected;
    actual["timings"]["iterate_ms"] = 99.0;
    CHECK(testing::golden_mismatch(expected, actual).empty());
  }

  TEST_CASE("text output is default") {
    const Run r = invoke({"analyze", "--input", golden("j.matrix.json")});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("NonzeroLimit") != std::string::npos);
  }

  TEST_CASE("bad input exits 2 and names the field") {
    const Run r = invoke({"analyze", "--input", golden("bad_row_length.matrix.json")});
    CHECK(r.code == cli::kExitInputError);
    CHECK(r.err.find("entries[") != std::string::npos);
    CHECK(invoke({"analyze", "--input", golden("does_not_exist.json")}).code == cli::kExitInputError);
  }

  TEST_CASE("overflow exits 3") {
    CHECK(invoke({"analyze", "--input", golden("overflow.matrix.json")}).code ==
          cli::kExitStrictFailure);
  }

  TEST_CASE("strict turns an exhausted budget into exit 3") {
    const std::vector<std::string> base{"analyze", "--input", golden("half_i.matrix.json"),
                                        "--max-iter", "5"};
    CHECK(invoke(base).code == cli::kExitOk);
    auto strict = base;
    strict.push_back("--strict");
    CHECK(invoke(strict).code == cli::kExitStrictFailure);
  }

  TEST_CASE("argument errors exit 2") {
    CHECK(invoke({"analyze"}).code == cli::kExitInputError);
    CHECK(invoke({"analyze", "--input", golden("j.matrix.json"), "--generate", "substochastic"})
              .code == cli::kExitInputError);
    CHECK(invoke({"analyze", "--generate", "no-such-family"}).code == cli::kExitInputError);
    CHECK(invoke({"analyze", "--input", golden("j.matrix.json"), "--format", "xml"}).code ==
          cli::kExitInputError);
    CHECK(invoke({"frobnicate"}).code == cli::kExitInputError);
  }

  TEST_CASE("help exits 0") {
    const Run r = invoke({"--help"});
    CHECK(r.code == cli::kExitOk);
    CHECK(r.out.find("analyze") != std::string::npos);
  }

  TEST_CASE("transpose analyzes the transposed matrix") {
    const Run plain = invoke({"analyze", "--generate", "positive-stochastic", "--d", "3", "--seed",
                              "5", "--format", "json"});
    const Run flipped = invoke({"analyze", "--generate", "positive-stochastic", "--d", "3",
                                "--seed", "5", "--format", "json", "--transpose"});
    REQUIRE(plain.code == 0);
    REQUIRE(flipped.code == 0);
    CHECK(json::parse(plain.out)["input_digest"] != json::parse(flipped.out)["input_digest"]);
  }

  TEST_CASE("generate writes a parseable matrix") {
    const Run r = invoke({"generate", "--family", "complex-diagonal", "--d", "4", "--seed", "11"});
    REQUIRE(r.code == cli::kExitOk);
    const ComplexMatrix m = parse_matrix_file(r.out);
    CHECK(m == generate({FamilyKind::ComplexDiagonal, 4}, 11));

    const fs::path dir = scratch_dir("generate");
    const fs::path file = dir / "m.json";
    REQUIRE(invoke({"generate", "--family", "complex-diagonal", "--d", "4", "--seed", "11",
                    "--output", file.string()})
                .code == cli::kExitOk);
    CHECK(parse_matrix_file(testing::read_text(file.string())) == m);
    CHECK(invoke({"generate", "--family", "phase-twisted-2x2", "--d", "3"}).code ==
          cli::kExitInputError);
  }

  TEST_CASE("input-dir analyzes every file in name order") {
    const fs::path dir = scratch_dir("batch");
    fs::copy_file(golden("j.matrix.json"), dir / "b.json");
    fs::copy_file(golden("half_i.matrix.json"), dir / "a.json");
    fs::copy_file(golden("bad_row_length.matrix.json"), dir / "c.json");
    std::ofstream(dir / "ignored.txt") << "not json";

    const Run r = invoke({"analyze", "--input-dir", dir.string(), "--format", "json"});
    CHECK(r.code == cli::kExitInputError);
    const json doc = json::parse(r.out);
    REQUIRE(doc.size() == 3);
    CHECK(doc[0]["file"].get<std::string>().find("a.json") != std::string::npos);
    CHECK(doc[1]["file"].get<std::string>().find("b.json") != std::string::npos);
    CHECK(doc[2].contains("error"));
    const json j_report = json::parse(testing::read_text(golden("j.report.json")));
    CHECK(testing::golden_mismatch(j_report, doc[1]["report"]).empty());
  }
}
