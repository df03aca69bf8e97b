// Runs the knalg executable end to end.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun knalg(const std::string& args) {
  const std::string cmd = std::string(KNALG_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, WittTable) {
  const CliRun r = knalg("table classical --genus 0 --range 3 --format csv");
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "m,n,s,branch,re,im");
  int rows = 0;
  while (std::getline(lines, line)) {
    int m, n, s, branch;
    double re, im;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%d,%d,%d,%lf,%lf", &m, &n, &s, &branch, &re, &im), 6) << line;
    EXPECT_EQ(re, double(m - n));
    EXPECT_EQ(im, 0.0);
    ++rows;
  }
  EXPECT_EQ(rows, 49);
}

TEST(Cli, QHeisenbergDiagonal) {
  const CliRun r = knalg("table qheisenberg --genus 0 --q 2 --range 2 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("2,-2,2.5,0\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("-1,1,-1,0\n"), std::string::npos) << r.out;
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(knalg("verify duality --genus 1").code, 0);
  EXPECT_EQ(knalg("verify all --genus 0 --range 2").code, 0);
  EXPECT_EQ(knalg("verify cocycle --genus 1").code, 1);
  EXPECT_EQ(knalg("verify nonsense").code, 2);
  EXPECT_EQ(knalg("table classical --tol -1").code, 2);
  EXPECT_EQ(knalg("table classical --genus 1 --range 3").code, 2);
  EXPECT_EQ(knalg("table classical --genus 2").code, 2);
  EXPECT_EQ(knalg("--no-such-flag table classical").code, 2);
  EXPECT_EQ(knalg("").code, 2);
}

TEST(Cli, ComputationErrorExitCode) {
  const auto path = temp("knalg_cli_bad_basis.json");
  std::ofstream(path) << R"({"genus": 0, "elements": {"0": {"e": 1}}})";
  EXPECT_EQ(knalg("table classical --basis-file " + path.string()).code, 3);
  std::filesystem::remove(path);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto cfg = temp("knalg_cli_config.json");
  std::ofstream(cfg) << R"({"genus": 0, "range": 2, "q": 3, "format": "csv"})";
  const CliRun fromFile = knalg("--config " + cfg.string() + " table qheisenberg");
  const CliRun overridden = knalg("--config " + cfg.string() + " table qheisenberg --q 2");
  std::filesystem::remove(cfg);
  ASSERT_EQ(fromFile.code, 0);
  EXPECT_NE(fromFile.out.find("-1,1,-1,0"), std::string::npos);
  EXPECT_EQ(fromFile.out.find("m,n,re,im"), 0u);
  EXPECT_NE(overridden.out, fromFile.out);
  EXPECT_EQ(overridden.out, knalg("table qheisenberg --range 2 --q 2 --format csv").out);
}

TEST(Cli, DeterministicJson) {
  const std::string args = "table central --genus 1 --range 1.5";
  const CliRun a = knalg(args), b = knalg(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("\"z0\""), std::string::npos);
}

TEST(Cli, ExportReloadGivesIdenticalEntries) {
  const auto basis = temp("knalg_cli_basis.json");
  ASSERT_EQ(knalg("expand-basis --genus 1 --range 7/2 --out " + basis.string()).code, 0);
  const CliRun built = knalg("table classical --genus 1 --range 0.5 --format csv");
  const CliRun loaded = knalg("table classical --genus 1 --range 0.5 --format csv --basis-file " + basis.string());
  std::filesystem::remove(basis);
  ASSERT_EQ(loaded.code, 0);
  EXPECT_EQ(built.out, loaded.out);
}

TEST(Cli, OutFlagWritesFile) {
  const auto out = temp("knalg_cli_out.csv");
  ASSERT_EQ(knalg("table central --range 1 --format csv --out " + out.string()).code, 0);
  EXPECT_EQ(slurp(out).rfind("m,n,re,im\n", 0), 0u);
  std::filesystem::remove(out);
}

TEST(Cli, ExpandBasisGenus0IsMonomial) {
  const CliRun r = knalg("expand-basis --genus 0 --range 1 --depth 8 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1,e,plus,2,1,0\n"), std::string::npos);
  EXPECT_NE(r.out.find("1,e,plus,3,0,0\n"), std::string::npos);
}
