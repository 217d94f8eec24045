#include "stein/report.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stein/cli.hpp"

namespace {

using stein::Rational;
using stein::Surd;
using stein::make_rational;
using namespace stein::report;

Report sample_report() {
  Report rep;
  rep.command = "demo";
  rep.seed = 42;
  rep.grid = {{"n_range", "3:4"}};
  Row a;
  a.add("n", 3L);
  a.add("tv", make_rational(1, 10));
  a.add("bound", Surd(Rational(7, 2), make_rational(1, 24)));
  a.add("ok", true);
  Row b;
  b.add("n", 4L);
  b.add("tv", make_rational(1, 3));
  b.add("note", std::string("a,b"));
  b.violation = true;
  rep.rows = {a, b};
  return rep;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = stein::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

size_t csv_data_rows(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  size_t rows = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    ++rows;
  }
  return rows;
}

TEST(Report, JsonCarriesDecimalAndExactFields) {
  std::ostringstream out;
  write_json(out, sample_report());
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_EQ(doc["header"]["seed"], 42);
  EXPECT_EQ(doc["header"]["version"], kToolVersion);
  EXPECT_EQ(doc["header"]["precision"], "exact");
  EXPECT_EQ(doc["header"]["grid"]["n_range"], "3:4");
  const auto& row = doc["rows"][0];
  EXPECT_EQ(row["tv"], "0.1");
  EXPECT_EQ(row["tv_exact"]["numerator"], "1");
  EXPECT_EQ(row["tv_exact"]["denominator"], "10");
  EXPECT_EQ(row["bound_exact"]["base"], "7/2");
  EXPECT_EQ(row["bound_exact"]["radicand"], "1/24");
  EXPECT_NEAR(row["bound"].get<double>(), 3.7041241452319316, 1e-15);
  EXPECT_EQ(doc["rows"][1]["tv"], "0.333333333333333333333333333333...");
  EXPECT_EQ(doc["summary"]["violations"], 1);
}

TEST(Report, Float64PrecisionDropsExactFields) {
  Report rep = sample_report();
  rep.precision = Precision::float64;
  std::ostringstream out;
  write_json(out, rep);
  const auto doc = nlohmann::json::parse(out.str());
  EXPECT_DOUBLE_EQ(doc["rows"][0]["tv"].get<double>(), 0.1);
  EXPECT_FALSE(doc["rows"][0].contains("tv_exact"));
}

TEST(Report, CsvHasHeaderCommentsAndUnionOfColumns) {
  std::ostringstream out;
  write_csv(out, sample_report());
  const std::string text = out.str();
  EXPECT_NE(text.find("# stein_verify 0.1.0 command=demo seed=42 precision=exact"),
            std::string::npos);
  EXPECT_NE(text.find("n,tv,bound,ok,note,violation\n"), std::string::npos);
  EXPECT_NE(text.find("3,0.1,3.7041241452319316,true,,false\n"), std::string::npos);
  EXPECT_NE(text.find("\"a,b\""), std::string::npos);
  EXPECT_EQ(csv_data_rows(text), 2u);
}

TEST(Report, TableEndsWithSummary) {
  std::ostringstream out;
  write_table(out, sample_report());
  EXPECT_NE(out.str().find("# rows=2 violations=1"), std::string::npos);
}

TEST(Report, ParseNames) {
  EXPECT_EQ(parse_format("csv"), Format::csv);
  EXPECT_FALSE(parse_format("xml").has_value());
  EXPECT_EQ(parse_precision("float64"), Precision::float64);
  EXPECT_EQ(format_name(Format::table), "table");
  EXPECT_EQ(render_text(Value{}, Precision::exact), "");
  EXPECT_EQ(render_text(Value{make_rational(-3, 4)}, Precision::exact), "-0.75");
}

TEST(Cli, NarayanaSingleRowJson) {
  const auto r = run_cli({"narayana-verify", "--n-range", "3:3", "--format", "json"});
  ASSERT_EQ(r.code, stein::cli::kExitPass) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["rows"].size(), 1u);
  EXPECT_EQ(doc["rows"][0]["tv"], "0.1");
  EXPECT_EQ(doc["rows"][0]["violation"], false);
}

TEST(Cli, NarayanaRangeCsv) {
  const auto r = run_cli({"narayana-verify", "--n-range", "2:50", "--format", "csv"});
  EXPECT_EQ(r.code, stein::cli::kExitPass) << r.err;
  EXPECT_EQ(csv_data_rows(r.out), 49u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"narayana-verify", "--n-range", "5:4"}).code, stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"narayana-verify", "--n-range", "1:4"}).code, stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"narayana-verify", "--n-range", "x"}).code, stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"narayana-verify", "--n-range", "2:3", "--format", "xml"}).code,
            stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({}).code, stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"pb-verify", "--p", "2/1"}).code, stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"pb-verify", "--p", "0.5"}).code, stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"pb-verify"}).code, stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"hyp-verify", "--N", "3", "--n", "1", "--m", "1"}).code,
            stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"hyp-verify", "--N", "6", "--n", "6", "--m", "1"}).code,
            stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"stein-check", "--mu", "1", "--sigma2", "0"}).code,
            stein::cli::kExitUsage);
  EXPECT_EQ(run_cli({"stein-check", "--mu", "1", "--sigma2", "-1/2"}).code,
            stein::cli::kExitUsage);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, stein::cli::kExitPass); }

TEST(Cli, PbInlineHalfHalfHasZeroDistance) {
  const auto r = run_cli({"pb-verify", "--p", "1/2,1/2"});
  ASSERT_EQ(r.code, stein::cli::kExitPass) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rows"][0]["tv"], "0");
  EXPECT_EQ(doc["rows"][0]["pair_form_agrees"], true);
}

TEST(Cli, PbDegenerateListIsFlaggedNotViolated) {
  const auto r = run_cli({"pb-verify", "--p", "0,1,1"});
  ASSERT_EQ(r.code, stein::cli::kExitPass) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rows"][0]["degenerate"], true);
  EXPECT_TRUE(doc["rows"][0]["tv"].is_null());
}

TEST(Cli, PbFileWithSeededLists) {
  const auto lists = stein::cli::random_p_lists(200, 2, 50, 2024);
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& p : lists) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& x : p) arr.push_back(x.get_str());
    doc.push_back(arr);
  }
  const auto path = std::filesystem::temp_directory_path() / "stein_report_test_probs.json";
  std::ofstream(path) << doc.dump();
  const auto r = run_cli({"pb-verify", "--p-file", path.string(), "--format", "csv"});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, stein::cli::kExitPass) << r.err;
  EXPECT_EQ(csv_data_rows(r.out), 200u);
}

TEST(Cli, PbFileRejectsFloats) {
  const auto path = std::filesystem::temp_directory_path() / "stein_report_test_float.json";
  std::ofstream(path) << "[0.5, \"1/3\"]";
  const auto r = run_cli({"pb-verify", "--p-file", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, stein::cli::kExitUsage);
}

TEST(Cli, HypSingleAndSweep) {
  const auto single = run_cli({"hyp-verify", "--N", "4", "--n", "2", "--m", "2"});
  ASSERT_EQ(single.code, stein::cli::kExitPass) << single.out;
  const auto doc = nlohmann::json::parse(single.out);
  ASSERT_EQ(doc["rows"].size(), 1u);
  EXPECT_EQ(doc["rows"][0]["tv_exact"]["numerator"], "1");
  EXPECT_EQ(doc["rows"][0]["tv_exact"]["denominator"], "6");

  const auto sweep = run_cli({"hyp-verify", "--sweep", "--N-max", "12", "--format", "csv"});
  EXPECT_EQ(sweep.code, stein::cli::kExitPass);
  size_t expected = 0;
  for (long N = 4; N <= 12; ++N) expected += static_cast<size_t>((N - 1) * (N - 1));
  EXPECT_EQ(csv_data_rows(sweep.out), expected);
}

TEST(Cli, SteinCheckResidualIsZero) {
  const auto r = run_cli(
      {"stein-check", "--mu", "2", "--sigma2", "2/5", "--trials", "50", "--seed", "7"});
  ASSERT_EQ(r.code, stein::cli::kExitPass) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rows"][0]["max_residual"], "0");
  EXPECT_EQ(doc["header"]["seed"], 7);
}

TEST(Cli, SteinCheckPerturbedIsNonzeroButPasses) {
  const auto r = run_cli({"stein-check", "--mu", "2", "--sigma2", "2/5", "--perturb"});
  ASSERT_EQ(r.code, stein::cli::kExitPass) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NE(doc["rows"][0]["max_residual"], "0");
}

TEST(Cli, SteinCheckWithNarayanaPair) {
  const auto r = run_cli(
      {"stein-check", "--mu", "5", "--sigma2", "3", "--narayana-pair", "15", "--trials", "5"});
  ASSERT_EQ(r.code, stein::cli::kExitPass) << r.out;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rows"][0]["pair_residual"], "0");
}

TEST(Cli, OutputIndependentOfWorkerCount) {
  const auto one = run_cli({"narayana-verify", "--n-range", "2:40", "--workers", "1"});
  const auto four = run_cli({"narayana-verify", "--n-range", "2:40", "--workers", "4"});
  EXPECT_EQ(one.code, stein::cli::kExitPass);
  EXPECT_EQ(one.out, four.out);
  const auto pb1 = run_cli({"pb-verify", "--random", "30", "--seed", "3", "--workers", "1"});
  const auto pb3 = run_cli({"pb-verify", "--random", "30", "--seed", "3", "--workers", "3"});
  EXPECT_EQ(pb1.out, pb3.out);
}

TEST(Cli, EnvironmentOverridesDefaults) {
  ::setenv("STEIN_VERIFY_FORMAT", "csv", 1);
  const auto env = run_cli({"narayana-verify", "--n-range", "3:3"});
  const auto flag = run_cli({"narayana-verify", "--n-range", "3:3", "--format", "json"});
  ::unsetenv("STEIN_VERIFY_FORMAT");
  EXPECT_NE(env.out.find("n,mu,sigma2"), std::string::npos);
  EXPECT_EQ(flag.out.front(), '{');
}

TEST(Cli, RandomListsAreSeededAndInRange) {
  const auto a = stein::cli::random_p_lists(20, 2, 9, 11);
  const auto b = stein::cli::random_p_lists(20, 2, 9, 11);
  EXPECT_EQ(a, b);
  for (const auto& p : a) {
    EXPECT_GE(p.size(), 2u);
    EXPECT_LE(p.size(), 9u);
    for (const auto& x : p) {
      EXPECT_GE(x, 0);
      EXPECT_LE(x, 1);
    }
  }
}

}  // namespace
