#include <gtest/gtest.h>

#include <map>

#include <nlohmann/json.hpp>

#include "uwq/verify.hpp"

using namespace uwq;

TEST(Verify, SuiteNames) {
  EXPECT_EQ(parse_suite("stft"), Suite::Stft);
  EXPECT_EQ(parse_suite("all"), Suite::All);
  EXPECT_THROW(parse_suite("everything"), std::invalid_argument);
}

TEST(Verify, StftSuitePasses) {
  const auto reports = run_verify(Suite::Stft);
  ASSERT_EQ(reports.size(), 2u);
  for (const auto& r : reports) {
    EXPECT_EQ(r.status, ReportStatus::Pass) << r.name << " " << r.detail;
    EXPECT_LE(r.measured, r.tolerance);
  }
}

TEST(Verify, EveryCriterionInExactlyOneSuite) {
  std::map<int, int> owners;
  for (Suite s : {Suite::Stft, Suite::Quant245, Suite::Expansion, Suite::Tau, Suite::Compose, Suite::Gaussconv,
                  Suite::Weights})
    for (int c : suite_criteria(s)) ++owners[c];
  ASSERT_EQ(owners.size(), 14u);
  for (const auto& [c, n] : owners) EXPECT_EQ(n, 1) << "criterion " << c;
  EXPECT_EQ(suite_criteria(Suite::Quant245), (std::vector<int>{3, 9, 10, 11}));
  EXPECT_EQ(suite_criteria(Suite::Tau), (std::vector<int>{6, 7}));
  EXPECT_EQ(suite_criteria(Suite::All).size(), 14u);
}

TEST(Verify, JsonReport) {
  const auto reports = run_verify(Suite::Stft);
  const auto j = nlohmann::json::parse(emit_report(reports, ReportFormat::Json));
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_NE(j["header"].get<std::string>().find(kVersion), std::string::npos);
  ASSERT_EQ(j["reports"].size(), 2u);
  EXPECT_EQ(j["reports"][0]["name"], "c01.stft_inversion");
  EXPECT_EQ(j["reports"][0]["status"], "pass");
}

TEST(Verify, TableReportHasHeader) {
  const auto text = emit_report(run_verify(Suite::Stft), ReportFormat::Table);
  EXPECT_EQ(text.rfind("# uwq ", 0), 0u);
}

TEST(Verify, RejectsTwoDimensionalRun) {
  VerifyOptions opts;
  opts.grid.d = 2;
  EXPECT_THROW(run_verify(Suite::Stft, opts), std::invalid_argument);
}
