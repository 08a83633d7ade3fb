#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

namespace {

const std::filesystem::path kDir = std::filesystem::temp_directory_path() / "speedup_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(SPEEDUP_CLI) + " " + args + " > " + (kDir / "stdout.txt").string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string file(const std::string& name, const std::string& body) {
  const auto p = kDir / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string slurp(const std::string& name) {
  std::ifstream in(kDir / name);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { std::filesystem::create_directories(kDir); }
};

}  // namespace

TEST_F(Cli, GenProtocolCounts) {
  EXPECT_EQ(run("gen-protocol --n 3 --model iis"), 0);
  EXPECT_NE(slurp("stdout.txt").find("vertices: 12"), std::string::npos);
  EXPECT_EQ(run("gen-protocol --n 3 --model iis+ts"), 0);
  EXPECT_NE(slurp("stdout.txt").find("vertices: 21"), std::string::npos);
}

TEST_F(Cli, SolveExitCodes) {
  const auto cons = file("cons.json", R"({"kind":"consensus","n":2})");
  EXPECT_EQ(run("solve --task " + cons + " --model iis --rounds 1"), 1);
  EXPECT_EQ(run("solve --task " + cons + " --model iis+ts --rounds 1 --witness " + (kDir / "w.json").string()), 0);
  EXPECT_TRUE(std::filesystem::exists(kDir / "w.json"));
  const auto big = file("a.json", R"({"kind":"approx","n":3,"m":2,"eps_num":1})");
  EXPECT_EQ(run("solve --task " + big + " --model iis --rounds 1 --budget 1"), 3);
}

TEST_F(Cli, UsageAndParseErrors) {
  EXPECT_EQ(run("solve --rounds 1"), 2);
  EXPECT_EQ(run("no-such-command"), 2);
  const auto bad = file("bad.json", "{not json");
  EXPECT_EQ(run("solve --task " + bad + " --rounds 0"), 2);
  const auto model = file("m.json", R"({"comm":"snapshot","box":"ts"})");
  const auto cons = file("cons.json", R"({"kind":"consensus","n":2})");
  EXPECT_EQ(run("solve --task " + cons + " --model " + model + " --rounds 0"), 2);
}

TEST_F(Cli, ClosureFixedPointAndLowerBound) {
  const auto a = file("a2.json", R"({"kind":"approx","n":2,"m":9,"eps_num":1})");
  const auto out = (kDir / "closed.json").string();
  EXPECT_EQ(run("closure --task " + a + " --model iis --out " + out), 0);
  EXPECT_EQ(run("fixed-point --task " + out + " --model iis"), 1);
  const auto cons = file("cons.json", R"({"kind":"consensus","n":2})");
  EXPECT_EQ(run("fixed-point --task " + cons + " --model iis"), 0);
  EXPECT_EQ(run("--threads 2 lower-bound --task " + a + " --model iis --max-steps 5"), 0);
  EXPECT_NE(slurp("stdout.txt").find("lower bound: 2"), std::string::npos);
  const auto beta = file("beta.json", R"({"1":0,"2":0})");
  EXPECT_EQ(run("closure --task " + a + " --beta " + beta + " --out " + out), 0);
}

TEST_F(Cli, RunRule) {
  const auto a = file("a3.json", R"({"kind":"approx","n":3,"m":4,"eps_num":1})");
  EXPECT_EQ(run("run-rule --rule halving --task " + a + " --model iis --rounds 2"), 0);
  EXPECT_EQ(run("run-rule --rule halving --task " + a + " --model iis --rounds 1"), 1);
}

TEST_F(Cli, ExportIsStable) {
  const auto cx = (kDir / "p.json").string();
  EXPECT_EQ(run("gen-protocol --n 2 --model iis --out " + cx), 0);
  EXPECT_EQ(run("export --in " + cx + " --format json --out " + (kDir / "e1.json").string()), 0);
  EXPECT_EQ(run("export --in " + (kDir / "e1.json").string() + " --format json --out " + (kDir / "e2.json").string()), 0);
  EXPECT_EQ(slurp("e1.json"), slurp("e2.json"));
  EXPECT_EQ(run("export --in " + cx + " --format dot --out " + (kDir / "p.dot").string()), 0);
  EXPECT_NE(slurp("p.dot").find("graph complex"), std::string::npos);
  const auto cons = file("cons.json", R"({"kind":"consensus","n":2})");
  EXPECT_EQ(run("export --in " + cons + " --format table"), 0);
  EXPECT_EQ(run("export --in " + cx + " --format table"), 2);
}

TEST_F(Cli, VerifyClaimsFilter) {
  EXPECT_EQ(run("verify-claims --filter 'consensus-*'"), 0);
  const auto out = slurp("stdout.txt");
  EXPECT_NE(out.find("PASS consensus-fixed-point-iis-n2"), std::string::npos);
  EXPECT_EQ(out.find("approx-"), std::string::npos);
  EXPECT_EQ(run("verify-claims --filter 'unknown-id'"), 0);
  EXPECT_NE(slurp("stdout.txt").find("warning"), std::string::npos);
}
