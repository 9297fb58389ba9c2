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

struct CliRun {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("sensmatch_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  CliRun run(const std::string& args) const {
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(SENSMATCH_CLI) + " " + args + " > " + out + " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenIsDeterministic) {
  CliRun a = run("--seed 4 gen gnp --n 30 --p 0.2");
  CliRun b = run("--seed 4 gen gnp --n 30 --p 0.2");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, 3), "30 ");
  EXPECT_NE(a.out, run("--seed 5 gen gnp --n 30 --p 0.2").out);
}

TEST_F(Cli, MatchOutputsJson) {
  write("g.txt", "6 5\n0 1\n2 3\n0 5\n1 2\n3 4\n");
  for (const char* alg : {"greedy", "approx", "lca", "weighted"}) {
    CliRun r = run(std::string("match ") + alg + " --graph " + path("g.txt"));
    ASSERT_EQ(r.code, 0) << alg;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["command"], "match");
    EXPECT_GE(j["size"].get<int>(), 2);
    EXPECT_EQ(j["matching"].size(), j["size"].get<std::size_t>());
  }
}

TEST_F(Cli, OracleOnSixVertexExample) {
  write("g.txt", "6 5\n0 1\n2 3\n0 5\n1 2\n3 4\n");
  CliRun r = run("oracle --graph " + path("g.txt"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["size"], 3);
}

TEST_F(Cli, OutFileByteIdentical) {
  write("g.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
  ASSERT_EQ(run("--seed 9 --trials 30 --jobs 2 --out " + path("a.json") + " sens --alg greedy --graph " + path("g.txt")).code, 0);
  ASSERT_EQ(run("--seed 9 --trials 30 --jobs 1 --out " + path("b.json") + " sens --alg greedy --graph " + path("g.txt")).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_FALSE(slurp(path("a.json")).empty());
}

TEST_F(Cli, CsvFormat) {
  write("g.txt", "3 3\n0 1\n1 2\n0 2\n");
  CliRun r = run("--format csv --trials 10 sens --graph " + path("g.txt"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "target,mean,se,max,trials");
}

TEST_F(Cli, ExitCodes) {
  write("bad.txt", "3 2\n0 1\n1 1\n");
  EXPECT_EQ(run("match greedy --graph " + path("bad.txt")).code, 1);
  EXPECT_EQ(run("match greedy --graph " + path("missing.txt")).code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("").code, 1);

  write("g.txt", "4 3\n0 1\n1 2\n2 3\n");
  EXPECT_EQ(run("match approx --eps 1 --graph " + path("g.txt")).code, 2);

  write("big.txt", "30 1\n0 1\n");
  EXPECT_EQ(run("oracle --graph " + path("big.txt")).code, 2);
  write("star.txt", "4 3\n0 1\n0 2\n0 3\n");
  EXPECT_EQ(run("match lca --delta-max 2 --graph " + path("star.txt")).code, 2);
}

TEST_F(Cli, LowerBoundCommands) {
  CliRun g = run("lb greedy --n 50");
  ASSERT_EQ(g.code, 0);
  auto j = nlohmann::json::parse(g.out);
  EXPECT_GE(j["hamming"].get<int>(), 47);
  CliRun r = run("--trials 20 lb randomized --eps 0.025 --alg greedy --no-raw");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["cycle_length"], 4);
}

TEST_F(Cli, OnlineArrivalFile) {
  write("g.txt", "4 3\n0 1\n1 2\n2 3\n");
  write("order.txt", "3 2 1 0\n");
  CliRun r = run("online --graph " + path("g.txt") + " --arrival-order file --arrival-file " + path("order.txt"));
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["arrivals"], nlohmann::json::array({3, 2, 1, 0}));
  write("bad_order.txt", "0 0 1 2\n");
  EXPECT_EQ(run("online --graph " + path("g.txt") + " --arrival-order file --arrival-file " + path("bad_order.txt")).code, 1);
}

TEST_F(Cli, GenCycle) {
  CliRun r = run("gen cycle --n 6");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "6 6");
}

TEST_F(Cli, UnknownFlagIsUsageError) {
  EXPECT_EQ(run("gen cycle --n 6 --bogus").code, 1);
  EXPECT_NE(slurp(path("stderr.txt")).find("--bogus"), std::string::npos);
}
