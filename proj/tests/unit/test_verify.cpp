#include "knalg/verify.hpp"

#include <json.hpp>

#include "knalg/commands.hpp"
#include "knalg/error.hpp"
#include "test_support.hpp"

using namespace knalg;
using knalg::test::H;

namespace {

const CheckResult& check(const VerificationReport& r, const std::string& name) {
  for (const CheckResult& c : r.checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no check named " + name);
}

RunConfig torusConfig() {
  RunConfig cfg;
  cfg.genus = 1;
  return cfg;
}

}  // namespace

TEST(Verify, SuiteNames) {
  EXPECT_EQ(parseSuite("jacobi"), Suite::Jacobi);
  EXPECT_EQ(suiteName(Suite::Limits), "limits");
  EXPECT_THROW(parseSuite("everything"), UsageError);
}

TEST(Verify, SphereSuitesPass) {
  RunConfig cfg;
  cfg.range = 3;
  const VerificationReport r = runVerification(cfg, Suite::All);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(check(r, "duality.plus").residual, 0.0);
  EXPECT_EQ(check(r, "jacobi.operator").residual, 0.0);
  EXPECT_EQ(check(r, "jacobi.central").residual, 0.0);
  EXPECT_EQ(check(r, "cocycle.support.classical").status, CheckStatus::Skipped);
  for (const CheckResult& c : r.checks) EXPECT_FALSE(c.certifies.empty()) << c.name;
}

TEST(Verify, TorusDualityPasses) {
  const VerificationReport r = runVerification(torusConfig(), Suite::Duality);
  EXPECT_TRUE(r.passed());
  EXPECT_LT(check(r, "duality.plus").residual, 1e-9);
  EXPECT_LT(check(r, "duality.minus").residual, 1e-9);
}

TEST(Verify, TorusLimitsConverge) {
  RunConfig cfg = torusConfig();
  cfg.params.q = 1.001;
  const VerificationReport r = runVerification(cfg, Suite::Limits);
  EXPECT_TRUE(r.passed());
  const CheckResult& rate = check(r, "limits.q-heisenberg-rate");
  EXPECT_EQ(rate.status, CheckStatus::Pass);
  const std::size_t at = rate.detail.find("ratio ");
  ASSERT_NE(at, std::string::npos) << rate.detail;
  EXPECT_NEAR(std::stod(rate.detail.substr(at + 6)), 4.0, 0.05) << rate.detail;
  EXPECT_EQ(check(r, "limits.inversion.kernel").status, CheckStatus::Pass);
}

TEST(Verify, TorusCocycleSupportIsReportedHonestly) {
  const VerificationReport r = runVerification(torusConfig(), Suite::Cocycle);
  // chi_(m,n) does not vanish for |m - n| > 3 on this torus; the graded support holds instead
  EXPECT_EQ(check(r, "cocycle.support.classical").status, CheckStatus::Fail);
  EXPECT_GT(check(r, "cocycle.support.classical").residual, 1.0);
  EXPECT_EQ(check(r, "cocycle.graded.classical").status, CheckStatus::Pass);
  EXPECT_EQ(check(r, "cocycle.two-point").status, CheckStatus::Pass);
  EXPECT_FALSE(r.passed());
}

TEST(Verify, TorusJacobiPassesInSafeBand) {
  RunConfig cfg = torusConfig();
  cfg.range = H(1.5);
  const VerificationReport r = runVerification(cfg, Suite::Jacobi);
  EXPECT_TRUE(r.passed());
  EXPECT_LT(check(r, "jacobi.operator").residual, 1e-6);
}

TEST(Verify, JacobiResidualOnSphereIsExact) {
  const BasisFamily f = buildGenus0(IndexSet::symmetric(10, 0), 32);
  const JacobiResidual j = jacobiResidual(f, 2, 2);
  EXPECT_EQ(j.operatorPart, 0.0);
  EXPECT_EQ(j.centralPart, 0.0);
}

TEST(Verify, DegenerateCentralIsSkipped) {
  RunConfig cfg;
  cfg.range = 2;
  cfg.params = {2.0, 0.0, 0.0};
  const VerificationReport r = runVerification(cfg, Suite::Antisymmetry);
  EXPECT_EQ(check(r, "antisymmetry.q-central").status, CheckStatus::Skipped);
  EXPECT_TRUE(r.passed());
}

TEST(Verify, ReportSerialization) {
  RunConfig cfg;
  cfg.range = 2;
  const VerificationReport r = runVerification(cfg, Suite::Duality);
  const auto doc = nlohmann::json::parse(reportToJson(r));
  EXPECT_EQ(doc["suite"], "duality");
  EXPECT_EQ(doc["passed"], true);
  EXPECT_EQ(doc["checks"][0]["status"], "pass");
  EXPECT_TRUE(doc["checks"][0].contains("witness"));
  const std::string csv = reportToCsv(r);
  EXPECT_EQ(csv.rfind("name,status,residual,tolerance,witness\n", 0), 0u);
}

TEST(Commands, TableOutputsAreDeterministic) {
  RunConfig cfg;
  cfg.range = 2;
  const std::string a = cmdTable(cfg, TableKind::Q).output;
  EXPECT_EQ(a, cmdTable(cfg, TableKind::Q).output);
  const auto doc = nlohmann::json::parse(a);
  EXPECT_EQ(doc["metadata"]["q"], 1.5);
  EXPECT_EQ(doc["entries"].size(), 100u);
  cfg.format = OutputFormat::Csv;
  const std::string csv = cmdTable(cfg, TableKind::Central).output;
  EXPECT_EQ(csv.rfind("m,n,re,im\n", 0), 0u);
}

TEST(Commands, ExitCodes) {
  RunConfig cfg;
  cfg.range = 2;
  EXPECT_EQ(cmdVerify(cfg, Suite::Duality).exitCode, kExitOk);
  RunConfig torus = torusConfig();
  EXPECT_EQ(cmdVerify(torus, Suite::Cocycle).exitCode, kExitVerifyFailed);
  RunConfig classical;
  classical.params.q = 1.0;
  EXPECT_THROW(cmdTable(classical, TableKind::QCentral), UsageError);
  EXPECT_NO_THROW(cmdTable(classical, TableKind::Classical));
  EXPECT_THROW(parseTableKind("virasoro"), UsageError);
}
