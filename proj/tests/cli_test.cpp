#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bellrobust/behavior_io.hpp"
#include "bellrobust/quantum.hpp"
#include "json.hpp"

namespace bellrobust {
namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "bell-robust");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "bellrobust_cli_test";
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string file(const std::string& name, const Behavior& p) {
    const auto path = dir_ / name;
    write_behavior(path, p);
    return path.string();
  }
  std::filesystem::path dir_;
};

TEST_F(Cli, ComputeMaxEntangled) {
  const Outcome o = run({"compute", "--max-entangled", "2", "--cglmp", "2,2", "--measures", "s"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_NEAR(j["r_s"].get<double>(), 0.207107, 1e-6);
  EXPECT_NEAR(j["nu"].get<double>(), 1.414214, 1e-6);
  EXPECT_FALSE(j.contains("r_w"));
  EXPECT_FALSE(j["local"].get<bool>());
}

TEST_F(Cli, ComputeUniformFile) {
  const Outcome o = run({"compute", "--behavior",
                         file("uniform.json", uniform_behavior(Scenario::binary_input(2, 2)))});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["r_w"].get<double>(), 0.0);
  EXPECT_EQ(j["r_s"].get<double>(), 0.0);
  EXPECT_EQ(j["r_g"].get<double>(), 0.0);
  EXPECT_TRUE(j["local"].get<bool>());
}

TEST_F(Cli, ComputeSchmidtQutrit) {
  const Outcome o = run({"compute", "--schmidt", "0.3333333333333333,0.3333333333333333,"
                         "0.3333333333333334", "--cglmp", "3,3", "--measures", "s,g"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_NEAR(j["r_s"].get<double>(), 0.145489, 1e-6);
  EXPECT_NEAR(j["r_g"].get<double>(), 0.145489, 1e-6);
}

TEST_F(Cli, InvalidFileExitsTwo) {
  Behavior bad = uniform_behavior(Scenario::binary_input(2, 2));
  bad(0, 0, 0, 0) = -0.01;
  bad(0, 0, 0, 1) = 0.51;
  const std::string path = file("bad.json", bad);
  const Outcome o = run({"compute", "--behavior", path});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("positivity"), std::string::npos) << o.err;
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(run({"validate", "--behavior", path}).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"compute", "--bogus"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"compute"}).code, 2);
  EXPECT_EQ(run({"compute", "--max-entangled", "2", "--cglmp", "3,3"}).code, 2);
}

TEST_F(Cli, ScanDimensionRowsAndCeiling) {
  const Outcome o = run({"scan-dim", "--min", "2", "--max", "4"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "D,r_s,r_g");
  EXPECT_EQ(l[1], "2,0.207107,0.138071");

  const Outcome big = run({"scan-dim", "--min", "2", "--max", "9"});
  EXPECT_EQ(big.code, 4);
  EXPECT_NE(big.err.find("8"), std::string::npos);
  EXPECT_EQ(run({"--max-dim", "3", "scan-dim", "--max", "4"}).code, 4);
}

TEST_F(Cli, Monotonicity) {
  const Outcome o = run({"monotonicity", "--tsirelson", "--k-max", "4"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0], "k,r_w,r_s,r_g");
  double last = -1;
  for (std::size_t i = 1; i < l.size(); ++i) {
    const double r_w = std::stod(l[i].substr(l[i].find(',') + 1));
    EXPECT_GT(r_w, last);
    last = r_w;
  }
}

TEST_F(Cli, Inequivalence) {
  const std::string a = file("tsirelson2.json", cglmp_behavior(max_entangled(2), 2));
  const std::string b = file("cglmp3.json", cglmp_behavior(max_entangled(3), 3));
  const Outcome o = run({"inequivalence", "--a", a, "--b", b, "--q1", "s", "--q2", "g"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("inequivalent: true"), std::string::npos);
  EXPECT_NE(o.out.find("no LOSR operation"), std::string::npos);
  const Outcome same = run({"inequivalence", "--a", a, "--b", a});
  EXPECT_NE(same.out.find("inequivalent: false"), std::string::npos);
}

TEST_F(Cli, OutFileAndPathScan) {
  const auto out = (dir_ / "path.csv").string();
  const Outcome o = run({"--out", out, "scan-path", "--d-eff", "2", "--path", "3", "--steps", "3"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  const auto l = lines(ss.str());
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "path,p,r_s,r_g");
  EXPECT_EQ(l[3], "3,1.000000,0.000000,0.000000");
}

TEST_F(Cli, SimplexHeader) {
  const Outcome o = run({"scan-simplex", "--d-eff", "3", "--resolution", "2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 7u);
  EXPECT_EQ(l[0], "q0,q1,q2,r_s,r_g");
}

TEST_F(Cli, BehaviorRoundTrip) {
  const Outcome o = run({"behavior", "--max-entangled", "3", "--cglmp", "3,2"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(serialize_behavior(parse_behavior(o.out)) + "\n", o.out);
}

TEST_F(Cli, NoValidateAcceptsSlightlyOffFile) {
  Behavior p = uniform_behavior(Scenario::binary_input(2, 2));
  p(0, 0, 0, 0) += 1e-6;
  const std::string path = file("off.json", p);
  EXPECT_EQ(run({"compute", "--behavior", path}).code, 2);
  EXPECT_EQ(run({"--no-validate", "compute", "--behavior", path, "--measures", "g"}).code, 0);
}

}  // namespace
}  // namespace bellrobust
