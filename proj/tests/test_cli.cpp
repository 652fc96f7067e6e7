#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#ifndef DUNKL_CLI_PATH
#error "DUNKL_CLI_PATH must name the dunkl executable"
#endif

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(DUNKL_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, DensityGridIsNonNegative) {
  const auto r = run("density --p 2 --k 0.75 --rho 1 --phi 0.3926990817 --grid 0.01:20:400 --method integral");
  ASSERT_EQ(r.status, 0);
  const auto rows = csv(r.out);
  ASSERT_EQ(rows.size(), 401u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"abscissa", "value", "method", "p", "k0", "k1", "rho", "phi", "seed"}));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(std::stod(rows[i][1]), 0.0) << rows[i][0];
}

TEST(Cli, BrownianRoutesAgree) {
  const auto a = csv(run("bm-tail --p 2 --rho 1 --phi 0.3926990817 --t 0.5 --method bessel").out);
  const auto b = csv(run("bm-tail --p 2 --rho 1 --phi 0.3926990817 --t 0.5 --method squarewave").out);
  ASSERT_EQ(a.size(), 2u);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_NEAR(std::stod(a[1][1]), std::stod(b[1][1]), 1e-8);
}

TEST(Cli, CheckLemma1) {
  const auto r = run("check --suite lemma1");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("pass"), std::string::npos);
}

TEST(Cli, SeventeenDigits) {
  const auto rows = csv(run("tail --phi-frac 1/8 --t 0.3").out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][7], "0.39269908169872414");
  EXPECT_EQ(rows[1][2], "series");
}

TEST(Cli, ReproducibleSimulation) {
  const std::string args = "tail --method mc --p 2 --k 0.8 --paths 3000 --grid 0.1:1.0:4 --seed 5";
  const auto a = run(args), b = run(args + " --threads 1");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(csv(a.out)[0][2], "std_error");
  EXPECT_NE(a.out, run("tail --method mc --p 2 --k 0.8 --paths 3000 --grid 0.1:1.0:4 --seed 6").out);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const std::string path = ::testing::TempDir() + "dunkl_cli_config.json";
  std::ofstream(path) << R"({"p": 1, "k": 0.8, "phi_frac": "1/6", "grid": "0.1:1:3", "format": "json"})";
  const auto r = run("tail --config " + path + " --k1 0.9");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"k0\": 0.8"), std::string::npos);
  EXPECT_NE(r.out.find("\"k1\": 0.9"), std::string::npos);
  EXPECT_NE(r.out.find("\"p\": 1"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("tail --p 0 --t 1").status, 2);
  EXPECT_EQ(run("tail --t 1 --method bessel").status, 2);
  EXPECT_EQ(run("tail --grid 1:2").status, 2);
  EXPECT_EQ(run("density --v 1 --phi 0.1 --phi-frac 1/8").status, 2);
  EXPECT_EQ(run("check --suite nope").status, 2);
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("tail --t 1 --max-terms 8").status, 1);
  EXPECT_EQ(run("--help").status, 0);
}
