#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "taut/gwi.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kData = TAUT_DATA_DIR;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TAUT_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

int count_lines(const std::string& s, const std::string& prefix = "") {
  std::istringstream in(s);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0 && (prefix.empty() ? line[0] != '#' : true)) ++n;
  return n;
}

std::string data(const std::string& name) { return (kData / name).string(); }

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("taut_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Cli, Enumerate) {
  auto r = run("enumerate -g 1 -n 4 -k 2 --boundary-only --symmetrize");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 9);
  EXPECT_NE(r.out.find("# 9 classes"), std::string::npos);
  r = run("enumerate -g 0 -n 4 -k 1 --boundary-only");
  EXPECT_EQ(count_lines(r.out), 3);
  r = run("enumerate -g 0 -n 3 -k 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(count_lines(r.out), 0);
  EXPECT_EQ(run("enumerate -g 0 -n 2 -k 0").code, 2);
  EXPECT_EQ(run("enumerate -g 1 -n 1").code, 2);
}

TEST(Cli, FindGetzler) {
  const auto dir = fresh_dir("find");
  auto r = run("find -g 1 -n 4 -k 2 --out " + dir.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("CANDIDATES 1"), std::string::npos);
  EXPECT_NE(r.out.find("NULLSPACE dim="), std::string::npos);
  EXPECT_GT(count_lines(r.out, "ROW l=1"), 0);
  const auto found = taut::read_sum_file(dir / "g1n4k2_1.gwi");
  const auto golden = taut::read_sum_file(kData / "getzler.gwi");
  ASSERT_FALSE(found.is_zero());
  const taut::Rational scale = found.begin()->second / golden.coefficient(found.begin()->first);
  EXPECT_EQ(found, scale * golden);

  const auto again = run("find -g 1 -n 4 -k 2 --out " + dir.string());
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, FindNothingNew) {
  const auto dir = fresh_dir("none");
  auto r = run("find -g 0 -n 5 -k 1 --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("CANDIDATES 0"), std::string::npos);
  r = run("find -g 1 -n 1 -k 1 --out " + dir.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("CANDIDATES 0"), std::string::npos);
  r = run("find -g 1 -n 4 -k 2 -q --registry " + data("registry") + " --out " + dir.string());
  EXPECT_NE(r.out.find("CANDIDATES 0"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "g1n4k2_1.gwi"));
}

TEST(Cli, FindMissingData) {
  const auto r = run("find -g 1 -n 5 -k 2 -q --out " + fresh_dir("missing").string());
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("(1,4,2)"), std::string::npos) << r.out;
}

TEST(Cli, Check) {
  auto r = run("check " + data("getzler.gwi"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "l=1 ZERO\nl=2 ZERO\n");
  r = run("check " + data("perturbed.gwi"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("l=1 NONZERO"), std::string::npos);
  EXPECT_NE(r.out.find("RESIDUAL"), std::string::npos);
  EXPECT_NE(r.out.find("(0,{1,2,3,4,5,6},2)"), std::string::npos);
  r = run("check " + data("g1trr.gwi"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "l=1 ZERO (vacuous)\n");
}

TEST(Cli, Reduce) {
  EXPECT_EQ(run("reduce " + data("T.gwi")).out, "ZERO\n");
  EXPECT_EQ(run("reduce " + data("v1.gwi") + " --basis " + data("v345.gwi")).out, "v1 = 2*v3 - v5\n");
  EXPECT_EQ(run("reduce " + data("v2.gwi") + " --basis " + data("v345.gwi")).out, "v2 = v3 + v4 - v5\n");
  const auto dir = fresh_dir("reduce");
  fs::create_directories(dir);
  std::ofstream(dir / "s.gwi") << "<1 4 e0>_0 <2 3 e0>_0\n";
  EXPECT_EQ(run("reduce " + (dir / "s.gwi").string()).out, "<1 4 e0>_0 <2 3 e0>_0\n");
  std::ofstream(dir / "bad.gwi") << "<1 2 e0>_0 <3 4 e0\n";
  EXPECT_EQ(run("reduce " + (dir / "bad.gwi").string()).code, 2);
  EXPECT_EQ(run("reduce " + data("getzler.gwi")).code, 3);
  EXPECT_EQ(run("reduce " + data("getzler.gwi") + " --registry " + data("registry")).out, "ZERO\n");
}

TEST(Cli, RegistryFromEnvironment) {
  setenv("TAUT_REGISTRY_DIR", data("registry").c_str(), 1);
  const auto r = run("reduce " + data("getzler.gwi"));
  unsetenv("TAUT_REGISTRY_DIR");
  EXPECT_EQ(r.out, "ZERO\n");
  EXPECT_EQ(run("reduce " + data("T.gwi") + " --registry /nonexistent/dir").code, 2);
}

TEST(Cli, Rank) {
  const auto r = run("rank -g 1 -n 4 -k 2 --boundary-only --expected 23");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("KNOWN_RANK 24"), std::string::npos);
  EXPECT_NE(r.out.find("NEW_EQUATIONS 1"), std::string::npos);
}
