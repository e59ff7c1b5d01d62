#include <gtest/gtest.h>

#include "dualinv/errors.hpp"
#include "dualinv/suite.hpp"
#include "json.hpp"

using namespace dualinv;

namespace {

SuiteConfig small(std::vector<std::string> suites) {
  SuiteConfig c;
  c.suites = std::move(suites);
  c.samples = 30;
  c.cosets = 3;
  c.finite_targets = {"Sp2(3)"};
  return c;
}

}  // namespace

TEST(Config, LevelMustBeBelowPrecision) {
  SuiteConfig c = small({"lattice"});
  c.level = 2;
  c.precision = 2;
  EXPECT_THROW(validate_config(c), ConfigError);
  EXPECT_THROW(run_suite(c), ConfigError);
}

TEST(Config, RejectsBadInputsBeforeRunning) {
  SuiteConfig c = small({"identity"});
  c.prime = 4;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = small({"bogus"});
  EXPECT_THROW(validate_config(c), ConfigError);
  c = small({"identity"});
  c.family = "symplectic";
  c.dim = 3;
  EXPECT_THROW(validate_config(c), ConfigError);
  c = small({"identity"});
  c.family = "hermitian";
  c.ext = "split";
  EXPECT_THROW(validate_config(c), ConfigError);
  c = small({"lattice"});
  c.precision = 9;
  c.level = 1;
  EXPECT_THROW(validate_config(c), BudgetError);
  c = small({"finite-duality"});
  c.finite_targets = {"Sp2(4)"};
  EXPECT_THROW(validate_config(c), ConfigError);
}

TEST(Config, TextFileAndOverrides) {
  SuiteConfig c;
  apply_config_text(c, "# comment\nfamily = hermitian\nsamples=12\nsuite=identity,cayley\n");
  EXPECT_EQ(c.family, "hermitian");
  EXPECT_EQ(c.samples, 12u);
  EXPECT_EQ(c.suites, (std::vector<std::string>{"identity", "cayley"}));
  apply_config_entry(c, "samples", "40");
  EXPECT_EQ(c.samples, 40u);
  EXPECT_THROW(apply_config_entry(c, "colour", "red"), ConfigError);
  EXPECT_THROW(apply_config_text(c, "no equals sign"), ConfigError);
  EXPECT_THROW(apply_config_entry(c, "dim", "-1"), ConfigError);
}

TEST(Report, EmptySuiteListIsGreen) {
  Report r = run_suite(small({}));
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(r.exit_code(), 0);
  auto j = nlohmann::json::parse(emit_report(r, "json"));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["summary"]["total"], 0);
}

TEST(Report, CayleySuitePasses) {
  Report r = run_suite(small({"cayley"}));
  ASSERT_FALSE(r.rows.empty());
  for (const auto& row : r.rows) EXPECT_EQ(row.status, Status::pass) << row.name << row.detail;
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Report, FiniteDualitySp23) {
  Report r = run_suite(small({"finite-duality"}));
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].status, Status::pass);
  EXPECT_NE(r.rows[0].detail.find("7/7 classes pass"), std::string::npos);
}

TEST(Report, FailingRowExitsOneWithPayload) {
  Report r = run_suite(small({}));
  CheckRow row;
  row.suite = "cayley";
  row.name = "cayley-multiplier";
  row.status = Status::fail;
  row.counterexample = Counterexample{"cayley-multiplier", "symplectic", 2, 3, 2, 1,
                                      {{"X", "[[1,0],[0,1]]"}}};
  r.rows.push_back(row);
  EXPECT_EQ(r.exit_code(), 1);
  auto j = nlohmann::json::parse(emit_report(r, "json"));
  EXPECT_EQ(j["rows"][0]["counterexample"]["inputs"]["X"], "[[1,0],[0,1]]");
  EXPECT_NE(emit_report(r, "markdown").find("[[1,0],[0,1]]"), std::string::npos);
}

TEST(Report, FindingPolicy) {
  Report r = run_suite(small({}));
  CheckRow row;
  row.name = "class-inversion X";
  row.status = Status::finding;
  r.rows.push_back(row);
  EXPECT_EQ(r.exit_code(), 0);
  r.config.findings = FindingPolicy::fail;
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Report, FormatsCarrySameRows) {
  Report r = run_suite(small({"identity", "lattice"}));
  auto j = nlohmann::json::parse(emit_report(r, "json"));
  const std::string md = emit_report(r, "markdown");
  ASSERT_EQ(j["rows"].size(), r.rows.size());
  for (const auto& row : j["rows"]) {
    const std::string line = "| " + row["suite"].get<std::string>() + " | " +
                             row["name"].get<std::string>() + " | " +
                             row["status"].get<std::string>() + " | " +
                             std::to_string(row["count"].get<std::size_t>()) + " | " +
                             row["detail"].get<std::string>() + " |";
    EXPECT_NE(md.find(line), std::string::npos) << line;
  }
}

TEST(Report, Deterministic) {
  SuiteConfig c = small({"identity", "hypothesis", "decomposition"});
  EXPECT_EQ(emit_report(run_suite(c), "json"), emit_report(run_suite(c), "json"));
  SuiteConfig d = c;
  d.seed = 2;
  EXPECT_EQ(emit_report(run_suite(d), "markdown"), emit_report(run_suite(d), "markdown"));
}

TEST(Replay, CounterexampleRoundTrip) {
  Counterexample c{"theta-cayley", "symplectic", 2, 3, 2, 1, {{"X", "[[-1,0],[0,-1]]"}}};
  Counterexample back = counterexample_from_json(to_json_text(c));
  EXPECT_EQ(back.check, c.check);
  EXPECT_EQ(back.inputs, c.inputs);
  // X = -1 is outside g_1, so the check fails and replay reproduces it.
  auto r = replay(back);
  EXPECT_TRUE(r.reproduced) << r.detail;
  // A valid input does not reproduce.
  c.inputs["X"] = "[[1,1],[0,1]]";
  EXPECT_FALSE(replay(c).reproduced);
  EXPECT_THROW(counterexample_from_json("{"), ConfigError);
}

TEST(Replay, ExhaustiveChecks) {
  Counterexample fb{"fiber-bucket", "symplectic", 2, 3, 2, 1, {{"g", "[[4,0],[0,7]]"}}};
  EXPECT_FALSE(replay(fb).reproduced);
  Counterexample dec{"decomposition", "symplectic", 2, 3, 2, 1, {{"base", "[[2,0],[0,1]]"}}};
  EXPECT_FALSE(replay(dec).reproduced);
  Counterexample ci{"class-inversion", "Sp", 2, 3, 0, 0,
                    {{"group", "Sp2(3)"}, {"representative", "[[1,0],[0,1]]"}}};
  EXPECT_FALSE(replay(ci).reproduced);
  Counterexample bad{"no-such-check", "symplectic", 2, 3, 2, 1, {}};
  EXPECT_THROW(replay(bad), ConfigError);
}

TEST(Targets, Parsing) {
  auto t = parse_finite_target("U2(9)");
  EXPECT_EQ(t.family, "U");
  EXPECT_EQ(t.q, 3);
  EXPECT_EQ(parse_finite_target("O-2(3)").family, "O-");
  EXPECT_THROW(parse_finite_target("U2(3)"), ConfigError);
  EXPECT_THROW(parse_finite_target("Sp(3)"), ConfigError);
}
