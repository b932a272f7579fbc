#include <gtest/gtest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args)
{
  std::string cmd = std::string(MOONSHINE_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

}  // namespace

TEST(Cli, JCoefficients)
{
  auto r = run("jcoeffs --n-max 4 --format csv");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "n,c(n)\n-1,1\n0,0\n1,196884\n2,21493760\n3,864299970\n4,20245856256\n");
}

TEST(Cli, Convergence)
{
  auto r = run("convergence --class 4B --n 1,5,10 --thresholds 25,100 --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["symbol"], "4||2+");
  EXPECT_EQ(j["rows"][0][1], "51.975");
  EXPECT_EQ(j["rows"][1][2], "4760.049");
  EXPECT_EQ(j["rows"][2], (nlohmann::json{"exact", "52", "4760", "0"}));
  for (auto& d : j["rounding_distance"]) EXPECT_LT(d.get<double>(), 0.25);
}

TEST(Cli, Tower)
{
  auto r = run("tower --class 1A --m 2 --n-max 2 --format json");
  ASSERT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["faber_polynomial"], "T^2 - 393768");
  EXPECT_EQ(j["rows"][3][1], "42987520");
  EXPECT_EQ(j["rows"][4][1], "40491909396");
}

TEST(Cli, ExitCodes)
{
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("jcoeffs --format xml").status, 2);
  EXPECT_EQ(run("jcoeffs --n-max -3").status, 2);
  EXPECT_EQ(run("convergence --class 1A --bits 8").status, 2);
  EXPECT_EQ(run("convergence --class 99Z").status, 2);
  EXPECT_EQ(run("convergence --class 1A --n 10 --cmax 1").status, 3);
  EXPECT_EQ(run("multiplicities --chartab /nonexistent.json").status, 4);
  EXPECT_EQ(run("multiplicities --i 9 --n-max 1").status, 4);
  // the bundled table is partial
  EXPECT_EQ(run("distribution --chartab " MOONSHINE_DATA "/monster_partial.json").status, 4);
}
