#include <gtest/gtest.h>

#include "support.hpp"

using namespace cremona;

namespace {

CommandResult run_json(Verb verb, const std::string& input, int grid_bound = 6) {
  Command cmd;
  cmd.verb = verb;
  cmd.input = input;
  cmd.grid_bound = grid_bound;
  cmd.format = ReportFormat::kJson;
  return run(cmd);
}

class BudgetGuard {
 public:
  explicit BudgetGuard(std::uint64_t budget) : saved_(default_step_budget().load()) { default_step_budget() = budget; }
  ~BudgetGuard() { default_step_budget() = saved_; }

 private:
  std::uint64_t saved_;
};

}  // namespace

TEST(Cli, ClassifyFermat) {
  CommandResult r = run_json(Verb::kClassify, "x^4+y^4+z^4+w^4");
  EXPECT_EQ(r.exit_code, exit_code::kOk);
  EXPECT_EQ(r.report["sigma"], 4);
  EXPECT_EQ(r.report["route"][0], "K3_RATIONAL_DOUBLE_POINTS");
  EXPECT_EQ(r.report["birational_type"], "K3");
}

TEST(Cli, AdjointOfASmoothCubic) {
  CommandResult r = run_json(Verb::kAdjoint, "x0^3 + x1^3 + x2^3", 3);
  EXPECT_EQ(r.exit_code, exit_code::kOk);
  EXPECT_EQ(r.report["verdict"], "FAILS(1,1)");
  EXPECT_EQ(r.report["failing_pair"], Json::array({1, 1}));
  EXPECT_EQ(r.report["failing_dim"], 0);
}

TEST(Cli, GenusOfANodalCubic) {
  CommandResult r = run_json(Verb::kGenus, "x1^2*x2 - x0^2*(x0 + x2)");
  EXPECT_EQ(r.report["delta"], 1);
  EXPECT_EQ(r.report["genus"], 0);
  EXPECT_EQ(r.report["cluster"].size(), 1u);
}

TEST(Cli, ReduceMonoid) {
  CommandResult r = run_json(Verb::kReduce, "x3*(x0^3+x1^3+x2^3)+x0^4+x1^4+x2^4");
  EXPECT_EQ(r.exit_code, exit_code::kOk);
  ASSERT_EQ(r.report["chain"].size(), 1u);
  EXPECT_EQ(r.report["chain"][0]["degree_before"], 4);
  EXPECT_EQ(r.report["chain"][0]["degree_after"], 1);
  EXPECT_EQ(r.report["final_degree"], 1);
}

TEST(Cli, StabilizeReportsTheKind) {
  CommandResult r = run_json(Verb::kStabilize, "x0^4 + x1^4 + x2^4 + x3^4");
  EXPECT_EQ(r.report["stabilizer"]["kind"], "NOT_CONSTRUCTIVE");
}

TEST(Cli, AnalyzeListsSingularPoints) {
  CommandResult r = run_json(Verb::kAnalyze, "x0^2*x1^2 + x2^4 + x3^4");
  EXPECT_EQ(r.exit_code, exit_code::kOk);
  EXPECT_EQ(r.report["singular_points"].size(), 2u);
  EXPECT_EQ(r.report["birational_type"], "ELLIPTIC_RULED");
}

TEST(Cli, ParseErrorExitCode) {
  CommandResult r = run_json(Verb::kClassify, "x0^2 +* x1");
  EXPECT_EQ(r.exit_code, exit_code::kParse);
  EXPECT_EQ(r.report["error"]["kind"], "PARSE");
}

TEST(Cli, InhomogeneousInputIsInvalid) {
  EXPECT_EQ(run_json(Verb::kClassify, "x0^2 + x1").exit_code, exit_code::kOther);
}

TEST(Cli, IrrationalPointsAreUnsupported) {
  CommandResult r = run_json(Verb::kClassify, "(x1^2 - 2*x0^2)^2 + x2^4 + x3^4 + x0*x1*x2*x3");
  EXPECT_EQ(r.exit_code, exit_code::kUnsupported);
  EXPECT_FALSE(r.report.contains("sigma"));
}

TEST(Cli, BudgetExhaustion) {
  BudgetGuard guard(2);
  CommandResult r = run_json(Verb::kClassify, "x0^2*x1^2 + x2^4 + x3^4");
  EXPECT_EQ(r.exit_code, exit_code::kBudget);
}

TEST(Cli, DeterministicOutput) {
  const char* inputs[] = {"x0^4 + x1^4 + x2^4 + x3^4", "x0^2*x1^2 + x0*x1*x2*x3 + x1^4 + x2^4 + x3^4",
                          "x1^2*x2^2+x1^2*x3^2+x2^2*x3^2+x1*x3^3"};
  for (const char* text : inputs) {
    Command cmd;
    cmd.verb = Verb::kStabilize;
    cmd.input = text;
    cmd.format = ReportFormat::kJson;
    EXPECT_EQ(run(cmd).rendered(), run(cmd).rendered()) << text;
  }
}

TEST(Cli, JsonIsOneLineWithStableKeys) {
  std::string line = run_json(Verb::kClassify, "x0^2*x1^2 + x1^4 + x2^4 + x3^4").rendered();
  ASSERT_FALSE(line.empty());
  EXPECT_EQ(line.back(), '\n');
  EXPECT_EQ(line.find('\n'), line.size() - 1);
  EXPECT_EQ(line.rfind("{\"input\":", 0), 0u);
  EXPECT_LT(line.find("\"input\""), line.find("\"seed\""));
  EXPECT_LT(line.find("\"seed\""), line.find("\"sigma\""));
}

TEST(Cli, TextRenderingShowsSigma) {
  Command cmd;
  cmd.input = "x0^4 + x1^4 + x2^4 + x3^4";
  std::string text = run(cmd).rendered();
  EXPECT_NE(text.find("sigma: 4"), std::string::npos);
}

TEST(Cli, TimingsAreOptIn) {
  Command cmd;
  cmd.input = "x0*x1 - x2*x3";
  EXPECT_FALSE(run(cmd).report.contains("timings"));
  cmd.timings = true;
  EXPECT_TRUE(run(cmd).report.contains("timings"));
}
