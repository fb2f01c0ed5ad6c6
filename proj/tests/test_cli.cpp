#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kExe = TRIBOLTZ_EXE;
const std::string kConfigs = std::string(TRIBOLTZ_SOURCE_DIR) + "/configs/";

int run(const std::string& args) {
  const int status = std::system((kExe + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("triboltz_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate --config x"), 2);
  EXPECT_EQ(run("constants"), 2);
  EXPECT_EQ(run("constants --config /nonexistent.cfg"), 2);
}

TEST(Cli, ConfigErrorsExitTwo) {
  const fs::path dir = scratch("bad");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.cfg") << "gamma2 = 3\n";
  EXPECT_EQ(run("simulate --config " + (dir / "bad.cfg").string() + " --out " + dir.string()), 2);
  std::ofstream(dir / "unknown.cfg") << "colour = red\n";
  EXPECT_EQ(run("simulate --config " + (dir / "unknown.cfg").string() + " --out " + dir.string()), 2);
}

TEST(Cli, ConstantsWritesBoundReport) {
  const fs::path dir = scratch("constants");
  ASSERT_EQ(run("constants --config " + kConfigs + "default.cfg --out " + dir.string()), 0);
  const auto report = nlohmann::json::parse(slurp(dir / "bound_report.json"));
  EXPECT_EQ(report["orders"].size(), 3u);
  EXPECT_TRUE(report["coercive"].contains("lambda"));
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["command"], "constants");
}

TEST(Cli, SimulateIsByteReproducible) {
  const fs::path a = scratch("sim_a"), b = scratch("sim_b");
  ASSERT_EQ(run("simulate --config " + kConfigs + "bimodal.cfg --seed 5 --out " + a.string()), 0);
  ASSERT_EQ(run("simulate --config " + kConfigs + "bimodal.cfg --seed 5 --out " + b.string()), 0);
  const std::string csv = slurp(a / "trajectory.csv");
  EXPECT_FALSE(csv.empty());
  EXPECT_EQ(csv, slurp(b / "trajectory.csv"));
  EXPECT_EQ(csv.rfind("t,m0,px,py,m2,", 0), 0u);
}

TEST(Cli, VerifyPassesAndNegativeControlFails) {
  EXPECT_EQ(run("verify --config " + kConfigs + "verify_quick.cfg --out " + scratch("verify").string()), 0);
  const fs::path dir = scratch("corrupt");
  EXPECT_EQ(run("verify --config " + kConfigs + "odi_corrupt.cfg --out " + dir.string()), 1);
  const auto report = nlohmann::json::parse(slurp(dir / "verify_report.json"));
  EXPECT_FALSE(report.dump().empty());
}

TEST(Cli, EnvelopeCheckPassesOnCompactData) {
  const fs::path dir = scratch("envelope");
  EXPECT_EQ(run("envelope-check --config " + kConfigs + "envelope_compact.cfg --out " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "envelope.csv"));
  EXPECT_TRUE(fs::exists(dir / "envelope_report.json"));
}
