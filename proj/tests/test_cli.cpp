#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "finv/cli.hpp"

using namespace finv;
using nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "finv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

ordered_json result_of(const Run& r) { return ordered_json::parse(r.out).at("result"); }

}  // namespace

TEST(Cli, FptExample) {
  const auto r = invoke({"fpt", "--exponents", "2,3", "--prime", "7"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(result_of(r)["fpt"], "5/6");
}

TEST(Cli, JumpingExample) {
  const auto r = invoke({"jumping", "--degree", "6", "--prime", "11"});
  ASSERT_EQ(r.code, 0);
  const auto j = result_of(r);
  EXPECT_EQ(j["fpt"], "7/11");
  EXPECT_EQ(j["jumps"], (ordered_json{"9/11", "1"}));
  EXPECT_EQ(j["complete"], false);
  EXPECT_EQ(j["regime"], "SMALL_P");
}

TEST(Cli, NuExample) {
  const auto r = invoke({"nu", "--exponents", "2,3", "--prime", "5", "--e", "1"});
  ASSERT_EQ(r.code, 0);
  const auto j = result_of(r);
  EXPECT_EQ(j["nu"], 3);
  EXPECT_EQ(j["bracket"], (ordered_json{"3/5", "4/5"}));
}

TEST(Cli, FermatFptAndTestIdeal) {
  EXPECT_EQ(result_of(invoke({"fermat-fpt", "--degree", "6", "--prime", "11"}))["fpt"], "7/11");
  const auto cls = invoke({"test-ideal", "--exponents", "2,3", "--prime", "5"});
  EXPECT_EQ(result_of(cls)["class"], "MAXIMAL");
  const auto unknown = invoke({"test-ideal", "--exponents", "2,3", "--prime", "2"});
  EXPECT_EQ(unknown.code, 1);
  const auto oracle = invoke({"test-ideal", "--exponents", "2,3", "--prime", "5", "--lambda", "4/5"});
  EXPECT_EQ(oracle.code, 0);
  EXPECT_EQ(result_of(oracle)["shape"], "MAXIMAL");
}

TEST(Cli, Verify) {
  const auto ok = invoke({"verify", "--exponents", "2,3", "--prime", "5"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(result_of(ok)["agree"], true);
  const auto starved = invoke({"verify", "--exponents", "2,3", "--prime", "7", "--budget-terms", "1"});
  EXPECT_EQ(starved.code, 1);
}

TEST(Cli, SweepCusp) {
  const auto r = invoke({"sweep", "--exponents", "2,3", "--from", "2", "--to", "20"});
  ASSERT_EQ(r.code, 0);
  const auto rows = result_of(r)["rows"];
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::int64_t p = rows[i]["p"];
    Rational want = p == 2 ? make_rational(1, 2) : p == 3 ? make_rational(2, 3) : make_rational(5, 6);
    if (p % 6 == 5) want -= make_rational(1, 6 * p);
    const std::string expected = to_string(want);
    EXPECT_EQ(rows[i]["fpt"], expected) << p;
  }
}

TEST(Cli, SweepSingleVariableIsConstant) {
  const auto report = result_of(invoke({"sweep", "--exponents", "5", "--from", "2", "--to", "50"}));
  const auto& rows = report["rows"];
  for (const auto& row : rows) EXPECT_EQ(row["fpt"], "1/5");
}

TEST(Cli, SweepSexticRegimes) {
  const auto report = result_of(invoke({"sweep", "--degree", "6", "--from", "7", "--to", "50"}));
  const auto& rows = report["rows"];
  for (const auto& row : rows) {
    const std::uint64_t p = row["p"];
    const std::uint64_t a = p % 6;
    const bool small = a >= 2 && p < a * 5;
    EXPECT_EQ(row["regime"] == "SMALL_P" || row["regime"] == "NO_INFO", small) << p;
  }
}

TEST(Cli, CsvCarriesSameValues) {
  const auto json = invoke({"sweep", "--exponents", "2,3", "--from", "2", "--to", "30"});
  const auto csv = invoke({"sweep", "--exponents", "2,3", "--from", "2", "--to", "30", "--output", "csv"});
  std::istringstream lines(csv.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("p,fpt,L", 0), 0u);
  const auto report = result_of(json);
  for (const auto& row : report["rows"]) {
    std::string line;
    ASSERT_TRUE(std::getline(lines, line));
    const std::uint64_t p = row["p"];
    EXPECT_EQ(line.rfind(std::to_string(p) + "," + row["fpt"].get<std::string>() + ",", 0), 0u) << line;
  }
}

TEST(Cli, ReportRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"fpt", "--exponents", "2,3", "--prime", "7"},
           {"jumping", "--degree", "6", "--prime", "11"},
           {"test-ideal", "--exponents", "2,3", "--prime", "5", "--lambda", "4/5"}}) {
    const auto r = invoke(args);
    const auto parsed = ordered_json::parse(r.out);
    const auto report = cli::report_from_json(parsed);
    EXPECT_EQ(cli::to_json(report), parsed);
    EXPECT_EQ(cli::render(report), r.out);
    EXPECT_EQ(cli::run(report.request).result, report.result);
  }
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"verify", "--exponents", "2,3", "--prime", "7"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, NoFloatingPoint) {
  const auto r = invoke({"sweep", "--degree", "4", "--from", "2", "--to", "60"});
  EXPECT_EQ(r.out.find('.', r.out.find("\"result\"")), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"fpt", "--exponents", "2,3", "--prime", "9"}).code, 2);
  EXPECT_EQ(invoke({"fpt", "--prime", "7"}).code, 2);
  EXPECT_EQ(invoke({"fpt", "--exponents", "2,x", "--prime", "7"}).code, 2);
  EXPECT_EQ(invoke({"test-ideal", "--exponents", "2,3", "--prime", "5", "--lambda", "-1/2"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--exponents", "2", "--from", "9", "--to", "3"}).code, 2);
  EXPECT_EQ(invoke({"jumping", "--degree", "6", "--prime", "5"}).code, 2);
  EXPECT_EQ(invoke({"fpt", "--exponents", "2,3", "--prime", "7", "--output", "xml"}).code, 2);
}

TEST(Cli, TextOutput) {
  const auto r = invoke({"fpt", "--exponents", "2,3", "--prime", "3", "--output", "text"});
  EXPECT_NE(r.out.find("fpt: 2/3"), std::string::npos);
  EXPECT_NE(r.out.find("L: 1"), std::string::npos);
}

TEST(Cli, JumpScan) {
  const auto r = invoke({"jump-scan", "--degree", "6", "--prime", "11", "--e-max", "2"});
  ASSERT_EQ(r.code, 0);
  std::vector<std::string> at;
  const auto report = result_of(r);
  for (const auto& row : report["rows"]) at.push_back(row["lambda"]);
  EXPECT_EQ(at, (std::vector<std::string>{"7/11", "9/11", "1"}));
}

TEST(Cli, EnvironmentBudgets) {
  ::setenv("FINV_BUDGET_TERMS", "1", 1);
  const auto starved = invoke({"test-ideal", "--exponents", "2,3", "--prime", "7", "--lambda", "5/6"});
  EXPECT_EQ(starved.code, 1);
  const auto flag_wins =
      invoke({"test-ideal", "--exponents", "2,3", "--prime", "7", "--lambda", "5/6", "--budget-terms", "100000"});
  EXPECT_EQ(flag_wins.code, 0);
  ::setenv("FINV_BUDGET_TERMS", "lots", 1);
  EXPECT_EQ(invoke({"fpt", "--exponents", "2,3", "--prime", "7"}).code, 2);
  ::unsetenv("FINV_BUDGET_TERMS");
}

TEST(Cli, VerifyFlagsDisagreement) {
  const auto r = invoke({"verify", "--exponents", "6,6", "--prime", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(result_of(r)["agree"], false);
}
