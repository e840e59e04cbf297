#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "entrokit/cli.hpp"

using entrokit::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double value_of(const Run& r) { return nlohmann::json::parse(r.out).at("value").get<double>(); }

}  // namespace

TEST(Cli, Entropy) {
  const auto r = run({"entropy", "--k", "0.25", "--r", "1", "--input", R"({"p":[0.25,0.25,0.25,0.25]})"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"value\":1.0}\n");
}

TEST(Cli, EntropyCsv) {
  const auto r = run({"entropy", "--k", "0.5", "--r", "1", "--format", "csv", "--input", R"({"p":[0.5,0.5]})"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "value\n0.5\n");
}

TEST(Cli, Divergence) {
  const auto r = run({"divergence", "--k", "0.25", "--r", "1", "--p", R"({"p":[0.5,0.5]})", "--q",
                      R"({"p":[0.5,0.5]})"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(value_of(r), 0.0);
  EXPECT_NE(r.out.find("\"support\":\"full\""), std::string::npos);
}

TEST(Cli, DivergenceBoundaryWarns) {
  const auto r = run({"divergence", "--k", "0.5", "--r", "1", "--p", R"({"p":[0.5,0.5]})", "--q",
                      R"({"p":[0.25,0.75]})"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, JointConditionalMutual) {
  const std::string uu = R"({"m":[[0.25,0.25],[0.25,0.25]]})";
  EXPECT_NEAR(value_of(run({"joint", "--k", "0.5", "--r", "1", "--input", uu})), 0.75, 1e-15);
  EXPECT_NEAR(value_of(run({"conditional", "--k", "0.5", "--r", "1", "--input", uu})), 0.25, 1e-15);
  EXPECT_NEAR(value_of(run({"mutual", "--k", "0.5", "--r", "1", "--input", uu})), 0.25, 1e-15);
  const std::string t = R"({"t":[[[0.5,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.5]]]})";
  EXPECT_NEAR(value_of(run({"joint", "--k", "0.5", "--r", "1", "--input", t})), 0.5, 1e-15);
  EXPECT_NEAR(value_of(run({"conditional", "--k", "0.5", "--r", "1", "--mode", "xy|z", "--input", t})),
              0.0, 1e-15);
}

TEST(Cli, Metric) {
  const auto r = run({"metric", "--k", "0.25", "--r", "0.5", "--convention", "r-shifted", "--input",
                      R"({"p":[0.5,0.5]})"});
  EXPECT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("g"), (nlohmann::json{5.0, 5.0}));
}

TEST(Cli, Reduce) {
  auto r = run({"reduce", "--k", "0.5", "--r", "0.5", "--target", "tsallis", "--input", R"({"p":[0.5,0.5]})"});
  ASSERT_EQ(r.code, 0);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("reference_q").get<double>(), 2.0);
  EXPECT_NEAR(doc.at("generalized_value").get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(doc.at("abs_diff").get<double>(), 0.0, 1e-15);

  r = run({"reduce", "--k", "0.25", "--r", "0.25", "--target", "tsallis", "--input",
           R"({"p":[0.1,0.9]})", "--q", R"({"p":[0.6,0.4]})"});
  ASSERT_EQ(r.code, 0);
  doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("reference_q").get<double>(), 0.5);
  EXPECT_LE(doc.at("abs_diff").get<double>(), 1e-12);

  r = run({"reduce", "--k", "1e-4", "--r", "1e-4", "--target", "shannon", "--input", R"({"p":[0.5,0.5]})"});
  ASSERT_EQ(r.code, 0);
  EXPECT_LE(nlohmann::json::parse(r.out).at("abs_diff").get<double>(), 1e-3);

  r = run({"reduce", "--k", "0.25", "--r", "0.3", "--target", "tsallis", "--input", R"({"p":[0.5,0.5]})"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"entropy", "--k", "0.25"}).code, 1);
  EXPECT_EQ(run({"nonsense"}).code, 1);

  auto r = run({"entropy", "--k", "0.25", "--r", "1", "--input", R"({"p":[0.3,0.3]})"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  r = run({"entropy", "--k", "0.25", "--r", "1", "--input", R"({"p":[0.3,)"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  r = run({"entropy", "--k", "0.7", "--r", "1", "--input", R"({"p":[0.5,0.5]})"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(run({"entropy", "--k", "0.7", "--r", "1", "--relaxed", "--input", R"({"p":[0.5,0.5]})"}).code, 0);
  r = run({"divergence", "--k", "0.25", "--r", "1", "--p", R"({"p":[0.5,0.5]})", "--q", R"({"p":[1,0]})"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({"entropy", "--k", "0.25", "--r", "1", "--input", R"({"p":[1,3]})", "--normalize"}).code, 0);
}

TEST(Cli, VerifyPassesAndIsDeterministic) {
  const auto a = run({"verify", "--trials", "100", "--seed", "42"});
  EXPECT_EQ(a.code, 0) << a.err;
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_TRUE(doc.at("summary").at("all_passed").get<bool>());
  const auto b = run({"verify", "--trials", "100", "--seed", "42", "--threads", "3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifyViolationExitCode) {
  const auto r = run({"verify", "--trials", "5", "--properties", "product_rule_1", "--tol", "1e-300"});
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("violation: product_rule_1"), std::string::npos);
}

TEST(Cli, VerifyConfigErrors) {
  EXPECT_EQ(run({"verify", "--properties", "bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--k-max", "0.9"}).code, 2);
  EXPECT_EQ(run({"verify", "--trials", "abc"}).code, 1);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("ENTROKIT_SEED", "5", 1);
  const auto a = run({"sample", "--kind", "distribution", "--dims", "3"});
  const auto b = run({"sample", "--kind", "distribution", "--dims", "3", "--seed", "5"});
  ::setenv("ENTROKIT_SEED", "not-a-number", 1);
  const auto c = run({"sample", "--dims", "3"});
  ::unsetenv("ENTROKIT_SEED");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(c.code, 2);
}

TEST(Cli, SampleRoundTripsThroughEntropy) {
  const auto s = run({"sample", "--kind", "joint2", "--dims", "2,3", "--seed", "9"});
  ASSERT_EQ(s.code, 0);
  const auto r = run({"joint", "--k", "0.3", "--r", "1", "--input", s.out});
  EXPECT_EQ(r.code, 0);
  EXPECT_GT(value_of(r), 0.0);
}
