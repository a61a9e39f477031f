#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace fs = std::filesystem;
using fockcalc::cli::run;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fockcalc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv(fockcalc::cli::kOutputDirVariable);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  int call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kNumber = R"({"dimension":1,"kind":"wick","terms":[{"alpha":[1],"beta":[1],"value":1}]})";
const char* kOscillator =
    R"({"dimension":1,"kind":"wick","terms":[{"alpha":[1],"beta":[1],"value":2},{"alpha":[0],"beta":[0],"value":1}]})";

}  // namespace

TEST_F(Cli, ExpandAntiwick) {
  const auto in = write("a.json", kNumber);
  ASSERT_EQ(call({"expand-antiwick", "--input", in, "--order", "1", "--output", path("o.json")}), 0) << err_.str();
  const json doc = json::parse(slurp(path("o.json")));
  EXPECT_LE(doc["result"]["deviation"].get<double>(), 1e-12);
  EXPECT_EQ(doc["result"]["decomposition"]["main_terms"].size(), 2u);
  EXPECT_EQ(doc["fockcalc_version"], fockcalc::kVersion);
  EXPECT_EQ(doc["config"]["order"], 1);
}

TEST_F(Cli, GardingTableAndJson) {
  const auto in = write("a.json", kOscillator);
  ASSERT_EQ(call({"garding", "--input", in, "--truncations", "8,16,32", "--output", path("g.json")}), 0) << err_.str();
  const json doc = json::parse(slurp(path("g.json")));
  for (const auto& v : doc["result"]["min_real_eigenvalues"]) EXPECT_NEAR(v.get<double>(), 1.0, 1e-12);
  EXPECT_EQ(doc["config"]["truncations"], json({8, 16, 32}));
  EXPECT_NE(out_.str().find("min Re eigenvalue"), std::string::npos);

  ASSERT_EQ(call({"garding", "--input", in, "--truncations", "4,8", "--format", "csv", "--output", path("g.csv")}), 0);
  const std::string csv = slurp(path("g.csv"));
  EXPECT_NE(csv.find("truncation,min_real_eigenvalue,max_imag_norm"), std::string::npos);
  EXPECT_NE(csv.find("# fockcalc "), std::string::npos);
}

TEST_F(Cli, Classify) {
  json e = {{"dimension", 1}, {"side", "hermite"}, {"coeffs", json::array()}};
  for (int k = 0; k <= 40; ++k) e["coeffs"].push_back({{"index", {k}}, {"value", std::exp(-double(k))}});
  const auto in = write("e.json", e.dump());
  ASSERT_EQ(call({"classify", "--input", in}), 0) << err_.str();
  const json doc = json::parse(out_.str());
  EXPECT_EQ(doc["result"]["family"], "roumieu_s");
  EXPECT_NEAR(doc["result"]["parameter"].get<double>(), 0.5, 0.05);
}

TEST_F(Cli, MatricesAndToWick) {
  const auto in = write("a.json", kNumber);
  ASSERT_EQ(call({"wick-matrix", "--input", in, "--degree", "3"}), 0) << err_.str();
  const auto m = fockcalc::io::matrix_from_json(json::parse(out_.str())["result"]);
  for (int g = 0; g <= 3; ++g) EXPECT_NEAR(std::abs(m(g, g) - double(g)), 0.0, 1e-14);

  const auto pt = write("p.json", R"({"dimension":1,"kind":"antiwick","terms":[{"alpha":[1],"beta":[1],"value":1}]})");
  ASSERT_EQ(call({"antiwick-matrix", "--input", pt, "--degree", "3", "--format", "csv"}), 0);
  EXPECT_NE(out_.str().find("row,col,re,im"), std::string::npos);

  const auto b = write("b.json", R"({"dimension":1,"kind":"weyl","terms":[{"alpha":[2],"beta":[0],"value":1},{"alpha":[0],"beta":[2],"value":1}]})");
  ASSERT_EQ(call({"to-wick", "--input", b}), 0) << err_.str();
  const auto a = fockcalc::io::wick_symbol_from_json(json::parse(out_.str())["result"]);
  EXPECT_NEAR(std::abs(a.coefficient({1}, {1}) - 2.0), 0.0, 1e-13);
  ASSERT_EQ(call({"weyl-matrix", "--input", b, "--degree", "4"}), 0);
  EXPECT_EQ(call({"kn-matrix", "--input", b, "--degree", "4"}), fockcalc::cli::kInput);
}

TEST_F(Cli, HermiteCoeffsAndBargmann) {
  const auto spec = write("s.json", R"({"dimension":1,"polynomial":[{"exponent":[0],"value":1}],"gaussian_scale":1})");
  ASSERT_EQ(call({"hermite-coeffs", "--input", spec, "--degree", "6", "--output", path("h.json")}), 0) << err_.str();
  const json h = json::parse(slurp(path("h.json")));
  // exp(-x^2/2) = π^{1/4} h_0.
  const auto f = fockcalc::io::expansion_from_json(h["result"]);
  EXPECT_NEAR(std::abs(f[fockcalc::MultiIndex{0}] - std::pow(std::numbers::pi, 0.25)), 0.0, 1e-13);

  std::ofstream(path("herm.json")) << h["result"].dump();
  ASSERT_EQ(call({"bargmann", "--input", path("herm.json"), "--check-points", "5", "--seed", "9"}), 0) << err_.str();
  const json b = json::parse(out_.str());
  EXPECT_EQ(b["result"]["fock"]["side"], "fock");
  ASSERT_EQ(b["result"]["cross_check"].size(), 5u);
  for (const auto& row : b["result"]["cross_check"]) EXPECT_LT(row["deviation"].get<double>(), 1e-8);
  EXPECT_EQ(b["config"]["seed"], 9);
}

TEST_F(Cli, BoundCheck) {
  const auto in = write("a.json", kNumber);
  ASSERT_EQ(call({"bound-check", "--input", in, "--s", "0.5", "--r", "1", "--direction", "loss"}), 0) << err_.str();
  EXPECT_TRUE(std::isfinite(json::parse(out_.str())["result"]["sup"].get<double>()));
  EXPECT_EQ(call({"bound-check", "--input", in, "--s", "0.3"}), fockcalc::cli::kUsage);
}

TEST_F(Cli, Selftest) {
  ASSERT_EQ(call({"selftest"}), 0);
  EXPECT_NE(out_.str().find("PASS"), std::string::npos);
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
}

TEST_F(Cli, DeterministicOutputAndEnvDirectory) {
  const auto in = write("a.json", kOscillator);
  setenv(fockcalc::cli::kOutputDirVariable, path("out").c_str(), 1);
  ASSERT_EQ(call({"garding", "--input", in, "--truncations", "4,8"}), 0);
  const std::string first = slurp(path("out/garding.json"));
  ASSERT_EQ(call({"garding", "--input", in, "--truncations", "4,8"}), 0);
  EXPECT_EQ(first, slurp(path("out/garding.json")));
  EXPECT_FALSE(first.empty());
  unsetenv(fockcalc::cli::kOutputDirVariable);
}

TEST_F(Cli, ErrorsCarryExitCodesAndJson) {
  EXPECT_EQ(call({}), fockcalc::cli::kUsage);
  EXPECT_EQ(call({"no-such-command"}), fockcalc::cli::kUsage);
  EXPECT_EQ(json::parse(err_.str())["error"]["kind"], "usage");
  EXPECT_EQ(call({"wick-matrix", "--input", path("missing.json")}), fockcalc::cli::kInput);
  EXPECT_EQ(json::parse(err_.str())["error"]["kind"], "input");
  const auto bad = write("bad.json", "{not json");
  EXPECT_EQ(call({"wick-matrix", "--input", bad}), fockcalc::cli::kInput);
  const auto in = write("a.json", kNumber);
  EXPECT_EQ(call({"wick-matrix", "--input", in, "--degree", "-1"}), fockcalc::cli::kUsage);
  EXPECT_EQ(call({"garding", "--input", in, "--truncations", "8,4"}), fockcalc::cli::kUsage);
  EXPECT_EQ(call({"to-wick", "--input", in}), fockcalc::cli::kInput);
  EXPECT_EQ(call({"classify", "--input", in, "--format", "csv"}), fockcalc::cli::kUsage);
  EXPECT_EQ(call({"wick-matrix", "--input", in, "--format", "xml"}), fockcalc::cli::kUsage);
}
