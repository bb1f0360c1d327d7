#include <gtest/gtest.h>

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "report.hpp"
#include "suites.hpp"

namespace spcell::harness {
namespace {

SuiteConfig small_config(const std::string& suite) {
  SuiteConfig cfg;
  cfg.suite = suite;
  cfg.r_lo = cfg.r_hi = 1;
  cfg.m_lo = cfg.m_hi = 1;
  cfg.samples = 3;
  cfg.seed = 41;
  return cfg;
}

TEST(ParseRange, AcceptsIntervalsAndSingletons) {
  EXPECT_EQ(parse_range("1..3"), (std::pair<int, int>{1, 3}));
  EXPECT_EQ(parse_range("2"), (std::pair<int, int>{2, 2}));
  EXPECT_EQ(parse_range("0..0"), (std::pair<int, int>{0, 0}));
  EXPECT_THROW((void)parse_range("3..1"), std::invalid_argument);
  EXPECT_THROW((void)parse_range("x"), std::invalid_argument);
  EXPECT_THROW((void)parse_range("1..y"), std::invalid_argument);
  EXPECT_THROW((void)parse_range("1..2..3"), std::invalid_argument);
}

TEST(MatrixJson, SerializesRationalsAsStrings) {
  MatQ a(1, 2);
  a(0, 0) = rat(-3, 7);
  const Json j = matrix_json(a);
  EXPECT_EQ(j.dump(), R"([["-3/7","0/1"]])");
}

TEST(Report, JsonRoundTripReproducesTheValue) {
  SuiteConfig cfg = small_config("bruhat");
  cfg.inject_fault = "bruhat";
  const SuiteReport rep = run_suite(cfg);
  ASSERT_EQ(rep.status, "fail");
  const SuiteReport back = report_from_json(report_json(rep));
  EXPECT_TRUE(back == rep);

  const SuiteReport reparsed = report_from_json(Json::parse(render(rep, "json")));
  EXPECT_TRUE(reparsed == rep);
}

TEST(Report, SchemaFieldsAndOrder) {
  const SuiteReport rep = run_suite(small_config("measure"));
  const Json j = report_json(rep);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.push_back(key);
  EXPECT_EQ(keys, (std::vector<std::string>{"suite", "config", "results", "status",
                                            "elapsed_ms"}));
  const Json& row = j.at("results").at(0);
  std::vector<std::string> row_keys;
  for (const auto& [key, value] : row.items()) row_keys.push_back(key);
  EXPECT_EQ(row_keys, (std::vector<std::string>{"r", "m", "case", "samples", "failures"}));
}

TEST(Report, ResultsBytesAreSeedDeterministic) {
  SuiteConfig cfg = small_config("bruhat");
  cfg.inject_fault = "bruhat";  // puts sampled inputs into the payload
  const std::string once = results_bytes(run_suite(cfg));
  const std::string twice = results_bytes(run_suite(cfg));
  EXPECT_EQ(once, twice);

  cfg.seed = 42;
  EXPECT_NE(results_bytes(run_suite(cfg)), once);
}

TEST(Report, FailuresEmptyIffStatusPass) {
  for (const std::string suite : {"bruhat", "orbit", "measure", "torus", "weyl", "cutoff"}) {
    const SuiteReport rep = run_suite(small_config(suite));
    bool any = false;
    for (const CaseResult& c : rep.results) any = any || !c.failures.empty();
    EXPECT_EQ(rep.status == "pass", !any) << suite;
    EXPECT_EQ(rep.status, "pass") << suite;
  }
}

TEST(Report, InjectedFaultFailsWithAnHonestSite) {
  SuiteConfig cfg = small_config("bruhat");
  cfg.inject_fault = "any";
  const SuiteReport rep = run_suite(cfg);
  EXPECT_EQ(rep.status, "fail");
  EXPECT_EQ(exit_code(rep), 1);
  ASSERT_FALSE(rep.results.empty());
  ASSERT_FALSE(rep.results[0].failures.empty());
  EXPECT_NE(rep.results[0].failures[0].site.find("injected_fault"), std::string::npos);
}

TEST(DeriveStatus, BudgetRecordsAloneAreInconclusive) {
  CaseResult c{1, 1, "x/check", 5, {}};
  EXPECT_EQ(derive_status({c}), "pass");

  c.failures.push_back({Json::object(), "a generic sample", "exhausted",
                        "x/check/resample_budget"});
  EXPECT_EQ(derive_status({c}), "inconclusive");
  SuiteReport rep;
  rep.status = derive_status({c});
  EXPECT_EQ(exit_code(rep), 2);

  c.failures.push_back({Json::object(), "0", "1", "x/check/entry_0_0"});
  EXPECT_EQ(derive_status({c}), "fail");
}

TEST(RunSuite, RejectsBadConfigs) {
  SuiteConfig cfg = small_config("nosuch");
  EXPECT_THROW((void)run_suite(cfg), std::invalid_argument);
  cfg = small_config("bruhat");
  cfg.r_lo = 3;
  cfg.r_hi = 1;
  EXPECT_THROW((void)run_suite(cfg), std::invalid_argument);
  cfg = small_config("bruhat");
  cfg.samples = 0;
  EXPECT_THROW((void)run_suite(cfg), std::invalid_argument);
  cfg = small_config("cutoff");
  cfg.prime = 6;
  EXPECT_THROW((void)run_suite(cfg), std::invalid_argument);
}

TEST(RunSuite, AllCombinesEverySuiteAndPasses) {
  const SuiteReport rep = run_suite(small_config("all"));
  EXPECT_EQ(rep.status, "pass");
  int bruhat = 0, orbit = 0, measure = 0, torus = 0, weyl = 0, cutoff = 0;
  for (const CaseResult& c : rep.results) {
    bruhat += c.case_name.rfind("bruhat/", 0) == 0;
    orbit += c.case_name.rfind("orbit/", 0) == 0;
    measure += c.case_name.rfind("measure/", 0) == 0;
    torus += c.case_name.rfind("torus/", 0) == 0;
    weyl += c.case_name.rfind("weyl/", 0) == 0;
    cutoff += c.case_name.rfind("cutoff/", 0) == 0;
  }
  EXPECT_EQ(bruhat, 4);
  EXPECT_EQ(orbit, 4);
  EXPECT_EQ(measure, 4);
  EXPECT_EQ(torus, 5);
  EXPECT_EQ(weyl, 4);
  EXPECT_EQ(cutoff, 5);
}

TEST(RunSuite, ExactTotalRankCells) {
  SuiteConfig cfg = small_config("weyl");
  cfg.n_exact = 3;
  const SuiteReport rep = run_suite(cfg);
  std::set<std::pair<int, int>> cells;
  for (const CaseResult& c : rep.results) cells.insert({c.r, c.m});
  EXPECT_EQ(cells, (std::set<std::pair<int, int>>{{1, 2}, {2, 1}, {3, 0}}));
}

TEST(Render, TextNamesEverySiteOfAFailingRun) {
  SuiteConfig cfg = small_config("bruhat");
  cfg.inject_fault = "bruhat";
  const SuiteReport rep = run_suite(cfg);
  const std::string text = render(rep, "text");
  EXPECT_NE(text.find("status: fail"), std::string::npos);
  EXPECT_NE(text.find("injected_fault"), std::string::npos);
  EXPECT_NE(text.find("expected:"), std::string::npos);
  EXPECT_THROW((void)render(rep, "yaml"), std::invalid_argument);
}

}  // namespace
}  // namespace spcell::harness
