#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "config.hpp"

namespace {

namespace fs = std::filesystem;
using sdwave::cli::json;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = sdwave::cli::run_cli(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("sdwave_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }
  std::string dir(const std::string& name) const { return (root_ / name).string(); }

  fs::path root_;
};

// ----------------------------------------------------------------- config --

TEST(Config, UnknownKeysAreRejectedWithTheirPath) {
  auto c = sdwave::cli::default_config("linear-decay");
  try {
    sdwave::cli::merge_checked(c, json{{"analysis", {{"tolerence", 0.1}}}});
    FAIL() << "no throw";
  } catch (const sdwave::cli::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("'analysis.tolerence'"), std::string::npos);
  }
}

TEST(Config, TypeMismatchNamesTheKey) {
  auto c = sdwave::cli::default_config("simulate");
  EXPECT_THROW(sdwave::cli::merge_checked(c, json{{"stepper", {{"dt", "small"}}}}), sdwave::cli::ConfigError);
  EXPECT_THROW(sdwave::cli::merge_checked(c, json{{"problem", 3}}), sdwave::cli::ConfigError);
}

TEST(Config, NullDefaultsAcceptValuesAndOverridesParseJson) {
  auto c = sdwave::cli::default_config("simulate");
  sdwave::cli::apply_override(c, "problem.a=[0,1]");
  sdwave::cli::apply_override(c, "problem.q=3.5");
  sdwave::cli::apply_override(c, "stepper.scheme=etd1");
  EXPECT_EQ(c["problem"]["a"], json::array({0, 1}));
  EXPECT_EQ(c["problem"]["q"], 3.5);
  EXPECT_EQ(c["stepper"]["scheme"], "etd1");
  EXPECT_THROW(sdwave::cli::apply_override(c, "noequals"), sdwave::cli::ConfigError);
  EXPECT_THROW(sdwave::cli::apply_override(c, "problem..n=2"), sdwave::cli::ConfigError);
}

TEST(Config, IntegerKeysRejectFractions) {
  auto c = sdwave::cli::default_config("linear-decay");
  c["problem"]["n"] = 2.5;
  EXPECT_THROW(sdwave::cli::get_int(c, "problem.n"), sdwave::cli::ConfigError);
}

// -------------------------------------------------------------- exponents --

TEST(CliExponents, PrintsThresholds) {
  auto o = run({"exponents", "--n", "2", "--j", "0"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("p > 5 (strict)"), std::string::npos);
  o = run({"exponents", "--n", "3", "--j", "1"});
  EXPECT_NE(o.out.find("p ≥ 2"), std::string::npos);
  o = run({"exponents", "--n", "5", "--j", "1"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("unsupported"), std::string::npos);
  EXPECT_NE(o.out.find("n = 2..4"), std::string::npos);
}

TEST(CliExponents, FullTableAndMixed) {
  const auto o = run({"exponents", "--mixed"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("n=2 j=0 mixed: |u|^p + a·∇|u|^q, n = 2..5: p > 6 (strict), q > 5 (strict)"),
            std::string::npos)
      << o.out;
}

// ------------------------------------------------------------ exit codes --

TEST_F(CliRun, DimensionSixIsAConfigError) {
  const auto o = run({"linear-decay", "--out", dir("a"), "--set", "problem.n=6"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("dimension out of supported range 1..5"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir("a")));  // nothing is computed or written
}

TEST_F(CliRun, BadFlagsAndFilesAreConfigErrors) {
  EXPECT_EQ(run({"linear-decay", "--no-such-flag"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"linear-decay", "--config", dir("missing.json")}).code, 2);
  std::ofstream(dir("bad.json")) << "{\"problem\": {\"n\": 3, \"mu\": 1}}";
  const auto o = run({"linear-decay", "--out", dir("x"), "--config", dir("bad.json")});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("'problem.mu'"), std::string::npos);
}

TEST_F(CliRun, LinearDecayDefaultPassesAndRecordsEveryDefault) {
  const auto o = run({"linear-decay", "--out", dir("lin")});
  ASSERT_EQ(o.code, 0) << o.err;
  for (const char* f : {"manifest.json", "norms.csv", "fits.csv", "norms.gp"}) {
    EXPECT_TRUE(fs::exists(root_ / "lin" / f)) << f;
  }
  const auto manifest = json::parse(slurp(root_ / "lin" / "manifest.json"));
  EXPECT_EQ(manifest["config"], sdwave::cli::default_config("linear-decay"));
  EXPECT_EQ(manifest["seed"], 1);
  EXPECT_NE(slurp(root_ / "lin" / "fits.csv").find("u_L2,power"), std::string::npos);
}

TEST_F(CliRun, ConfigFileAndOverridesLandInTheManifest) {
  std::ofstream(dir("cfg.json")) << R"({"problem": {"n": 2}, "data": {"u0": {"family": "zero"},
      "u1": {"family": "gaussian", "amplitude": 1.0}}})";
  const auto o = run({"linear-decay", "--config", dir("cfg.json"), "--set", "analysis.tolerance=0.06",
                      "--out", dir("cfg")});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto manifest = json::parse(slurp(root_ / "cfg" / "manifest.json"));
  EXPECT_EQ(manifest["config"]["problem"]["n"], 2);
  EXPECT_EQ(manifest["config"]["analysis"]["tolerance"], 0.06);
  EXPECT_NE(o.out.find("sqrt(log(t+e))"), std::string::npos);
}

TEST_F(CliRun, EmptyDataWarnsAndStrictTurnsItIntoFailure) {
  auto o = run({"linear-decay", "--out", dir("e"), "--set", "data.u0.family=zero"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.err.find("warning"), std::string::npos);
  EXPECT_NE(o.out.find("vacuous"), std::string::npos);
  o = run({"linear-decay", "--out", dir("e2"), "--set", "data.u0.family=zero", "--strict"});
  EXPECT_EQ(o.code, 1);
}

TEST_F(CliRun, FailingGateNamesTheQuantity) {
  const auto o = run({"linear-decay", "--out", dir("g"), "--set", "analysis.tolerance=0.001"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.err.find("gate failed: u_L2"), std::string::npos) << o.err;
}

TEST_F(CliRun, OutputsAreByteIdenticalAcrossRunsAndJobCounts) {
  ASSERT_EQ(run({"linear-decay", "--out", dir("r1"), "--jobs", "1"}).code, 0);
  ASSERT_EQ(run({"linear-decay", "--out", dir("r2"), "--jobs", "3"}).code, 0);
  EXPECT_EQ(slurp(root_ / "r1" / "norms.csv"), slurp(root_ / "r2" / "norms.csv"));
  EXPECT_EQ(slurp(root_ / "r1" / "fits.csv"), slurp(root_ / "r2" / "fits.csv"));
}

TEST_F(CliRun, OutputDirectoryFromEnvironment) {
  ::setenv("SDWAVE_OUT_DIR", dir("env").c_str(), 1);
  const auto o = run({"profile-check"});
  ::unsetenv("SDWAVE_OUT_DIR");
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(fs::exists(root_ / "env" / "profile.csv"));
}

TEST_F(CliRun, ProfileCheckZeroDataIsVacuous) {
  const auto o = run({"profile-check", "--out", dir("p"), "--set", "data.u1.family=zero"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("vacuous"), std::string::npos);
}

TEST_F(CliRun, SimulateWritesSnapshotsAndSummary) {
  const auto o = run({"simulate", "--out", dir("s"), "--set", "discretization.N=32", "--set",
                      "discretization.L=20", "--set", "stepper.t_end=2", "--set",
                      "output.snapshot_interval=1"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("note: exponents admissible"), std::string::npos);
  for (const char* f : {"snapshot_0000.bin", "snapshot_0002.bin", "norms.csv", "twin_norms.csv", "summary.json"}) {
    EXPECT_TRUE(fs::exists(root_ / "s" / f)) << f;
  }
  const auto summary = json::parse(slurp(root_ / "s" / "summary.json"));
  EXPECT_EQ(summary["solution_space"]["space"], "X1");
  EXPECT_TRUE(summary["linear_twin"]["pass"].get<bool>());
}

TEST_F(CliRun, SimulateOutsideTheoryIsAdvisoryAndMaySignalBlowUp) {
  const auto o = run({"simulate", "--out", dir("b"), "--set", "problem.p=4", "--set", "data.u0.amplitude=50",
                      "--set", "stepper.t_end=2", "--set", "analysis.twin=false", "--set", "discretization.N=32"});
  EXPECT_NE(o.out.find("outside the admissible range"), std::string::npos);
  EXPECT_EQ(o.code, 3) << o.err;
  EXPECT_NE(o.err.find("blow-up"), std::string::npos);
}

TEST_F(CliRun, SimulateRejectsHighDimensions) {
  const auto o = run({"simulate", "--out", dir("h"), "--set", "problem.n=4"});
  EXPECT_EQ(o.code, 2);
}

TEST_F(CliRun, VerifySingleSelectorAndManifest) {
  const auto o = run({"verify", "--out", dir("v"), "integral-power:alpha=1,beta=1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto csv = slurp(root_ / "v" / "checks.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,param_json,measured,refinement_ratio,pass");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST_F(CliRun, VerifyMalformedSelectorNamesTheKey) {
  const auto o = run({"verify", "--out", dir("m"), "integral-power:alpha=1,gamma=2"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("'gamma'"), std::string::npos);
}

TEST_F(CliRun, VerifyUnsupportedSelectorFailsTheGate) {
  const auto o = run({"verify", "--out", dir("u"), "band-decay:kernel=1,band=high,beta2=1"});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("UNSUP"), std::string::npos);
}

}  // namespace
