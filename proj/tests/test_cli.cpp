#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "pixelport/errors.hpp"
#include "pixelport/image_io.hpp"

using namespace pixelport;
using namespace pixelport::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("pixelport_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_image(int w, int h, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexGrid g(w, h);
    for (auto& v : g.values) v = {u(rng), u(rng)};
    const fs::path p = dir_ / "input.cimg";
    io::write_complex_image(p, g, io::ImageEncoding::ReIm);
    return p;
  }

  std::map<std::string, std::string> base(const std::string& r = "1") {
    return {{"mode", "ideal"},
            {"ideal_r", r},
            {"input", (dir_ / "input.cimg").string()},
            {"output", (dir_ / "out.cimg").string()},
            {"fidelity_map", (dir_ / "map.csv").string()},
            {"summary", (dir_ / "summary.json").string()}};
  }

  nlohmann::json summary() {
    std::ifstream in(dir_ / "summary.json");
    return nlohmann::json::parse(in);
  }

  int run_exe(const std::string& args) {
    const std::string cmd = std::string(PIXELPORT_EXE) + " " + args + " > " + (dir_ / "stdout.txt").string() +
                            " 2> " + (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ConfigExactlyOneSqueezingSource) {
  auto kv = base();
  EXPECT_NO_THROW(RunConfig::from_key_values(kv));
  kv.erase("ideal_r");
  EXPECT_THROW(RunConfig::from_key_values(kv), ConfigError);
  kv = base();
  kv["r0"] = "1";
  EXPECT_THROW(RunConfig::from_key_values(kv), ConfigError);
  kv = base();
  kv["mode"] = "spdc";
  EXPECT_THROW(RunConfig::from_key_values(kv), ConfigError);
  kv.erase("ideal_r");
  EXPECT_THROW(RunConfig::from_key_values(kv), ConfigError);
  kv["r0"] = "1";
  kv["R"] = "0.5";
  kv["Xi"] = "10";
  const RunConfig ring = RunConfig::from_key_values(kv);
  EXPECT_EQ(ring.effective_ring().Xi, 10.0);
  kv["k_p"] = "2";
  EXPECT_THROW(RunConfig::from_key_values(kv), ConfigError);
}

TEST_F(CliTest, ConfigRejectsBadValues) {
  const std::pair<const char*, const char*> bad[] = {
      {"ideal_r", "-1"}, {"ideal_r", "abc"}, {"seed", "-3"}, {"shots", "1.5"}, {"pitch", "0"},
      {"plane", "sideways"}, {"mode", "quantum"}, {"bogus", "1"}, {"origin_x", "1"}, {"input", ""}};
  for (const auto& [k, v] : bad) {
    auto kv = base();
    kv[k] = v;
    EXPECT_THROW(RunConfig::from_key_values(kv), ConfigError) << k << "=" << v;
  }
}

TEST_F(CliTest, ConfigFromSpdcParameters) {
  auto kv = base();
  kv.erase("ideal_r");
  kv["mode"] = "spdc";
  for (const char* k : {"w_p", "w_0", "L", "k_p", "k_d", "f"}) kv[k] = "1";
  EXPECT_THROW(RunConfig::from_key_values(kv), ConfigError);  // theta_d missing
  kv["theta_d"] = "0.5";
  const RunConfig c = RunConfig::from_key_values(kv);
  EXPECT_DOUBLE_EQ(c.effective_ring().r0, std::tan(0.5));
  kv["theta_d"] = "2";
  EXPECT_THROW(RunConfig::from_key_values(kv), ConfigError);
}

TEST_F(CliTest, TeleportUnsqueezedFloor) {
  write_image(6, 6, 1);
  EXPECT_EQ(run_teleport(RunConfig::from_key_values(base("0")), std::cerr), kExitOk);
  EXPECT_EQ(summary()["image_fidelity"].get<double>(), 0.5);
}

TEST_F(CliTest, TeleportAnalyticExact) {
  write_image(8, 8, 2);
  EXPECT_EQ(run_teleport(RunConfig::from_key_values(base("1.5")), std::cerr), kExitOk);
  const auto s = summary();
  EXPECT_EQ(s["image_fidelity"].get<double>(), (1.0 + std::tanh(1.5)) / 2.0);
  EXPECT_EQ(s["analytic_image_fidelity"].get<double>(), s["image_fidelity"].get<double>());
  EXPECT_EQ(s["parameters"]["ideal_r"], "1.5");
  const std::string map = slurp(dir_ / "map.csv");
  EXPECT_NE(map.find("# ideal_r=1.5"), std::string::npos);
  EXPECT_NE(map.find("col,row,x,y,r,fidelity"), std::string::npos);
}

TEST_F(CliTest, TeleportStrongSqueezingReproducesInput) {
  const fs::path in = write_image(5, 4, 3);
  auto kv = base("20");
  kv["pitch"] = "0.3";
  EXPECT_EQ(run_teleport(RunConfig::from_key_values(kv), std::cerr), kExitOk);
  const ComplexGrid a = io::read_complex_image(in), b = io::read_complex_image(dir_ / "out.cimg");
  ASSERT_EQ(a.values.size(), b.values.size());
  for (std::size_t k = 0; k < a.values.size(); ++k) EXPECT_LT(std::abs(a.values[k] - b.values[k]), 1e-8);
}

TEST_F(CliTest, TeleportRingSaturates) {
  write_image(21, 21, 4);
  auto kv = base();
  kv.erase("ideal_r");
  kv["mode"] = "spdc";
  kv["r0"] = "1";
  kv["R"] = "0.5";
  kv["Xi"] = "10";
  kv["pitch"] = "0.1";  // pixel (20, 10) sits at x = 1
  EXPECT_EQ(run_teleport(RunConfig::from_key_values(kv), std::cerr), kExitOk);
  std::ifstream map(dir_ / "map.csv");
  std::string line;
  bool found = false;
  while (std::getline(map, line)) {
    if (line.rfind("20,10,", 0) == 0) {
      const double f = std::stod(line.substr(line.rfind(',') + 1));
      EXPECT_NEAR(f, (1.0 + std::tanh(10.0)) / 2.0, 1e-15);
      EXPECT_GT(f, 0.9999);
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(CliTest, TeleportMissingInputIsIoError) {
  auto kv = base();
  kv["input"] = (dir_ / "absent.cimg").string();
  EXPECT_EQ(run_teleport(RunConfig::from_key_values(kv), std::cerr), kExitIo);
}

TEST_F(CliTest, ProfileCsvPeaksAtRing) {
  for (auto [r0, R] : preset_rings()) {
    std::ostringstream out;
    write_profile_csv(out, {r0, R, 1.0}, 512);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "x,eta,eta_sq_normalized");
    double best_x = -1, best = -1;
    while (std::getline(in, line)) {
      const auto c1 = line.find(','), c2 = line.rfind(',');
      const double x = std::stod(line.substr(0, c1)), v = std::stod(line.substr(c2 + 1));
      if (v > best) best = v, best_x = x;
    }
    EXPECT_EQ(best, 1.0);
    EXPECT_EQ(best_x, r0);
  }
  std::ostringstream disk;
  write_profile_csv(disk, {0.0, 1.0, 1.0}, 64);
  EXPECT_NE(disk.str().find("\n0,1,1\n"), std::string::npos);
}

TEST_F(CliTest, FidelityCurveRange) {
  std::ostringstream out;
  write_fidelity_curve_csv(out, {1.0, 0.5, 1.0}, {1.0, 10.0}, 512);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,fidelity_xi=1,fidelity_xi=10");
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');
    while (std::getline(row, cell, ',')) {
      const double f = std::stod(cell);
      EXPECT_GE(f, 0.5);
      EXPECT_LE(f, 1.0);
    }
  }
  std::ostringstream bad;
  EXPECT_THROW(write_fidelity_curve_csv(bad, {1.0, 0.5, 1.0}, {}, 16), ConfigError);
  EXPECT_THROW(write_fidelity_curve_csv(bad, {1.0, 0.5, 1.0}, {-1.0}, 16), DomainError);
}

TEST_F(CliTest, OracleVerifyJsonAndExitCodes) {
  std::ostringstream out, err;
  OracleSuiteOptions opt;
  EXPECT_EQ(run_oracle_verify(opt, true, out, err), kExitOk);
  const auto rows = nlohmann::json::parse(out.str());
  EXPECT_EQ(rows.size(), default_oracle_tolerances().size());
  for (const auto& r : rows) EXPECT_TRUE(r["passed"].get<bool>()) << r["name"];

  std::ostringstream out4, err4;
  opt.dim = 4;
  EXPECT_EQ(run_oracle_verify(opt, false, out4, err4), kExitOracleFailed);
  EXPECT_NE(err4.str().find("eigen_beta_1+2i"), std::string::npos);
  EXPECT_NE(out4.str().find("FAIL"), std::string::npos);
}

TEST_F(CliTest, ExecutableExitCodes) {
  write_image(4, 4, 5);
  std::ofstream(dir_ / "ok.cfg") << "mode=ideal\nideal_r=1\ninput=" << (dir_ / "input.cimg").string() << "\noutput="
                                 << (dir_ / "o.cimg").string() << "\nfidelity_map=" << (dir_ / "m.csv").string()
                                 << "\nsummary=" << (dir_ / "s.json").string() << "\n";
  std::ofstream(dir_ / "bad.cfg") << "mode=ideal\n";
  EXPECT_EQ(run_exe("teleport --config " + (dir_ / "ok.cfg").string()), 0);
  EXPECT_EQ(run_exe("teleport --config " + (dir_ / "bad.cfg").string()), 1);
  EXPECT_EQ(run_exe("teleport --config " + (dir_ / "missing.cfg").string()), 2);
  EXPECT_EQ(run_exe("teleport --config " + (dir_ / "ok.cfg").string() + " --set input=/nonexistent.cimg"), 2);
  EXPECT_EQ(run_exe("teleport --config " + (dir_ / "ok.cfg").string() + " --shots notanumber"), 1);
  EXPECT_EQ(run_exe("no-such-command"), 1);
  EXPECT_EQ(run_exe("oracle-verify --dim 4"), 3);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("eigen_beta"), std::string::npos);
  EXPECT_EQ(run_exe("oracle-verify --tol nosuch=1"), 1);
  EXPECT_EQ(run_exe("profile --set r0=1 --set R=0"), 1);
  EXPECT_EQ(run_exe("profile --set foo=1"), 1);
  EXPECT_EQ(run_exe("profile --config " + (dir_ / "ok.cfg").string()), 1);
  EXPECT_EQ(run_exe("profile --set r0=1 --set k_p=2"), 1);
  EXPECT_EQ(run_exe("--help"), 0);
}

TEST_F(CliTest, ProfileFromSpdcConfig) {
  std::ofstream(dir_ / "spdc.cfg") << "mode=spdc\ninput=unused.cimg\nseed=4\nw_p=1\nw_0=0.01\nL=1\nk_p=16\n"
                                      "k_d=8.5\ntheta_d=0.3\nf=2\nXi=3\n";
  EXPECT_EQ(run_exe("profile --samples 8 --config " + (dir_ / "spdc.cfg").string()), 0);
  const std::string out = slurp(dir_ / "stdout.txt");
  EXPECT_NE(out.find("# R=1\n"), std::string::npos);
  EXPECT_NE(out.find("# Xi=3\n"), std::string::npos);
}

TEST_F(CliTest, ExecutablePresetFiles) {
  EXPECT_EQ(run_exe("profile --preset fig3 --out " + (dir_ / "fig3.csv").string()), 0);
  EXPECT_EQ(run_exe("fidelity-curve --preset fig4 --out " + (dir_ / "fig4.csv").string()), 0);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_TRUE(fs::exists(dir_ / ("fig3_" + std::to_string(k) + ".csv")));
    EXPECT_TRUE(fs::exists(dir_ / ("fig4_" + std::to_string(k) + ".csv")));
  }
  EXPECT_NE(slurp(dir_ / "fig3_3.csv").find("# r0=0.69999999999999996"), std::string::npos);
}
