#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gconv/io.hpp"

namespace gconv {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  mutable std::map<std::string, std::string> fields;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GCONV_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  Run r;
  if (!pipe) return r;
  std::string out;
  std::array<char, 4096> buf{};
  while (const auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::istringstream lines(out);
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) r.fields[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gconv_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string write(const std::string& name, const io::json& doc) {
    const auto p = dir_ / name;
    io::write_json(doc, p);
    return p.string();
  }
  std::string identity_cnn() {
    const auto z2 = make_cyclic(2);
    return write("id.json", io::to_json(CNN(z2, {ConvLayer(FilteringMap(z2, 1, {GroupSignal::delta(z2)}), AffineMap::identity(1))},
                                            Activation::relu())));
  }
  fs::path dir_;
};

TEST_F(Cli, StatsOnIdentityCnn) {
  const auto r = run("stats --input " + identity_cnn());
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.fields["W_conv"], "2");
  EXPECT_EQ(r.fields["channel_counts"], "(1,1)");
  EXPECT_EQ(r.fields["filter_counts"], "(1)");
  EXPECT_EQ(r.fields["architecture"], "(2,2)");
}

TEST_F(Cli, TranspileZeroLastLayer) {
  const auto z3 = make_cyclic(3);
  const FNN phi(z3, 1, {AffineMap(2, 3, {{0, 0, 1.0}, {1, 2, -1.0}}, {0.0, 0.5}), AffineMap::zero(1, 2)},
                Activation::relu());
  const auto in = write("phi.json", io::to_json(phi));
  const auto out = (dir_ / "psi.json").string(), report = (dir_ / "report.json").string();
  const auto r = run("transpile --input " + in + " --out " + out + " --report " + report + " --check-samples 5 --seed 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.fields["special_case"], "zero_last_layer");
  EXPECT_EQ(r.fields["target_weights"], "0");
  const auto doc = io::read_json(report);
  EXPECT_EQ(doc["special_case"], "zero_last_layer");
  EXPECT_EQ(doc["check_seed"], 3);
  EXPECT_EQ(doc["check_samples"], 5);
  EXPECT_TRUE(std::holds_alternative<CNN>(io::load_network(out)));
}

TEST_F(Cli, CompareWithSelf) {
  const auto a = identity_cnn();
  auto r = run("compare --a " + a + " --b " + a + " --p inf --samples 8");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.fields["distance"], "0");
  r = run("compare --a " + a + " --b " + a + " --p 2 --samples 8 --symmetrize");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.fields["factor"], "1.4142135623730951");
}

TEST_F(Cli, LowerAndRoundtrip) {
  const auto z2 = make_cyclic(2);
  const FNN phi(z2, 1, {AffineMap(2, 2, {{0, 0, 1.0}, {1, 1, -2.0}}, {0.0, 0.5}), AffineMap(1, 2, {{0, 0, 1.0}, {0, 1, 1.0}}, {0.0})},
                Activation::relu());
  const auto in = write("phi.json", io::to_json(phi));
  const auto psi = (dir_ / "psi.json").string(), back = (dir_ / "back.json").string();
  EXPECT_EQ(run("transpile --input " + in + " --out " + psi).code, 0);
  const auto lowered = run("lower --input " + psi + " --out " + back);
  EXPECT_EQ(lowered.code, 0);
  EXPECT_EQ(lowered.fields["passed"], "true");
  const auto rt = run("roundtrip --input " + in);
  EXPECT_EQ(rt.code, 0);
  EXPECT_EQ(rt.fields["chained_factor"], "8");
}

TEST_F(Cli, EvalAndVerify) {
  const auto net = identity_cnn();
  const auto x = write("x.json", io::json{{"channels", 1}, {"values", {0.1, -3.0}}});
  EXPECT_EQ(run("eval --input " + net + " --x " + x).code, 0);
  const auto v = run("verify-equivariance --input " + net + " --samples 4 --seed 1");
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.fields["tested_shifts"], "8");

  // A reshaped FNN with different weights per coordinate is not equivariant.
  const auto z2 = make_cyclic(2);
  const auto fnn = write("fnn.json", io::to_json(FNN(z2, 1, {AffineMap(2, 2, {{0, 0, 1.0}, {1, 1, 2.0}}, {0.0, 0.0})},
                                                     Activation::relu())));
  const auto bad = run("verify-equivariance --input " + fnn + " --out-channels 1");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.fields["witness_shift"], "1");
}

TEST_F(Cli, GroupCheck) {
  EXPECT_EQ(run("group-check --group '{\"kind\": \"cyclic\", \"n\": 5}'").code, 0);
  const auto r = run("group-check --group '{\"kind\": \"table\", \"table\": [[0,1,2],[1,1,0],[2,0,1]]}'");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.fields["valid"], "false");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("stats").code, 1);
  EXPECT_EQ(run("stats --input " + (dir_ / "missing.json").string()).code, 1);
  EXPECT_EQ(run("stats --input x --bogus").code, 1);
  const auto a = identity_cnn();
  EXPECT_EQ(run("compare --a " + a + " --b " + a + " --p -1").code, 1);
  EXPECT_EQ(run("transpile --input " + a).code, 1);
}

}  // namespace
}  // namespace gconv
