#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kendall/io.hpp"

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kendall_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  /// Runs the CLI with stdout to `out` (in the temp dir) and stderr to err.txt.
  int run(const std::string& args, const std::string& out = "stdout.txt") const {
    const std::string cmd = std::string(KENDALL_CLI_PATH) + " " + args + " > " + path(out) + " 2> " + path("err.txt");
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  }

  std::vector<std::vector<std::string>> rows(const std::string& name) const {
    std::istringstream in(read(name));
    std::string line;
    std::vector<std::vector<std::string>> out;
    while (std::getline(in, line)) out.push_back(kendall::io::detail::split(line, ','));
    return out;
  }

  fs::path dir_;
};

TEST_F(Cli, TransformShapeAndDeterminism) {
  write("in.csv", "a,b,c\n1,5,0.5\n2,4,0.5\n3,7,1.5\n4,1,2\n");
  ASSERT_EQ(run("transform " + path("in.csv") + " -o " + path("t1.csv")), 0);
  ASSERT_EQ(run("transform " + path("in.csv") + " -o " + path("t2.csv")), 0);
  const auto r = rows("t1.csv");
  ASSERT_EQ(r.size(), 14u);
  EXPECT_EQ(r[0][0], "#kendall n=4 scheme=rowmajor-v1");
  EXPECT_EQ(r[1], (std::vector<std::string>{"a", "b", "c"}));
  for (std::size_t i = 2; i < r.size(); ++i) EXPECT_EQ(r[i].size(), 3u);
  EXPECT_EQ(r[2], (std::vector<std::string>{"A", "D", "T"}));
  EXPECT_EQ(read("t1.csv"), read("t2.csv"));
}

TEST_F(Cli, TransformMissingPropagates) {
  write("in.tsv", "x\ty\n1\t3\nNA\t2\n3\t1\n");
  ASSERT_EQ(run("transform " + path("in.tsv") + " -o " + path("t.csv")), 0);
  const auto r = rows("t.csv");
  ASSERT_EQ(r.size(), 8u);
  for (std::size_t j = 0; j < 6; ++j) {
    const auto [a, b] = kendall::pair_at(j, 3);
    EXPECT_EQ(r[j + 2][0] == "NA", a == 1 || b == 1) << j;
    EXPECT_NE(r[j + 2][1], "NA");
  }
}

TEST_F(Cli, TransformErrors) {
  write("ragged.csv", "a,b\n1,2\n3\n");
  EXPECT_EQ(run("transform " + path("ragged.csv")), 1);
  EXPECT_NE(read("err.txt").find("line 3"), std::string::npos) << read("err.txt");

  write("text.csv", "a,b\n1,x\n2,y\n");
  EXPECT_EQ(run("transform " + path("text.csv")), 1);
  EXPECT_NE(read("err.txt").find("'b'"), std::string::npos) << read("err.txt");
  EXPECT_EQ(run("transform --expand-categorical " + path("text.csv") + " -o " + path("e.csv")), 0);
  EXPECT_EQ(rows("e.csv")[1], (std::vector<std::string>{"a", "b=x"}));

  write("short.csv", "a\n1\n");
  EXPECT_EQ(run("transform " + path("short.csv")), 1);
  EXPECT_EQ(run("transform " + path("absent.csv")), 1);
}

TEST_F(Cli, TransformJitterBreaksTies) {
  write("ties.csv", "a\n1\n1\n2\n");
  ASSERT_EQ(run("transform --jitter 5:0.01 " + path("ties.csv") + " -o " + path("j1.csv")), 0);
  ASSERT_EQ(run("transform --jitter 5:0.01 " + path("ties.csv") + " -o " + path("j2.csv")), 0);
  EXPECT_EQ(read("j1.csv"), read("j2.csv"));
  EXPECT_EQ(read("j1.csv").find(",T"), std::string::npos);
  EXPECT_EQ(read("j1.csv").find("\nT"), std::string::npos);
}

TEST_F(Cli, InverseRoundTrip) {
  write("in.csv", "p,q\n0.3,10\n-2,30\n7,20\n1.5,40\n");
  ASSERT_EQ(run("transform " + path("in.csv") + " -o " + path("t.csv")), 0);
  ASSERT_EQ(run("inverse " + path("t.csv") + " -o " + path("r.csv")), 0);
  EXPECT_EQ(read("r.csv"), "p,q\n2,1\n1,3\n4,2\n3,4\n");
}

TEST_F(Cli, InverseThreeCycleAndMissingOnly) {
  write("cycle.csv", "#kendall n=3 scheme=rowmajor-v1\nc,m\nA,NA\nD,NA\nD,NA\nA,NA\nA,NA\nD,NA\n");
  ASSERT_EQ(run("inverse " + path("cycle.csv")), 0);
  EXPECT_EQ(read("stdout.txt"), "c,m\n2,2\n2,2\n2,2\n");
}

TEST_F(Cli, InverseErrors) {
  write("bad.csv", "#kendall n=2 scheme=rowmajor-v1\nc\nA\nX\n");
  EXPECT_EQ(run("inverse " + path("bad.csv")), 1);
  EXPECT_NE(read("err.txt").find("'X'"), std::string::npos);
  write("count.csv", "#kendall n=3 scheme=rowmajor-v1\nc\nA\nD\n");
  EXPECT_EQ(run("inverse " + path("count.csv")), 1);
}

TEST_F(Cli, InverseWeighted) {
  write("w.csv",
        "#kendall-weights n=3 scheme=rowmajor-v1\nf:A,f:D,f:T\n0.9,0.05,0.05\n0.34,0.33,0.33\n"
        "0.33,0.34,0.33\n0.33,0.33,0.34\n0.33,0.34,0.33\n0.33,0.33,0.34\n");
  ASSERT_EQ(run("inverse --weighted " + path("w.csv")), 0);
  const auto r = rows("stdout.txt");
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[1][0], "1");
  EXPECT_EQ(r[2][0], "3");
}

TEST_F(Cli, ScoreDecisionCopyGivesLog2) {
  write("in.csv", "f,g,d\n1,4,10\n2,1,20\n3,3,30\n4,2,40\n5,5,50\n");
  ASSERT_EQ(run("score " + path("in.csv") + " --decision d"), 0);
  auto r = rows("stdout.txt");
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0], (std::vector<std::string>{"feature", "score"}));
  EXPECT_EQ(r[1][0], "f");
  EXPECT_NEAR(std::stod(r[1][1]), std::log(2.0), 1e-15);

  ASSERT_EQ(run("score " + path("in.csv") + " --decision d --base 2"), 0);
  EXPECT_NEAR(std::stod(rows("stdout.txt")[1][1]), 1.0, 1e-15);
  ASSERT_EQ(run("--log-base 2 score " + path("in.csv") + " --decision d"), 0);
  EXPECT_NEAR(std::stod(rows("stdout.txt")[1][1]), 1.0, 1e-15);
}

TEST_F(Cli, ScoreBinningChangesOrdering) {
  // `skewed` is a monotone image of the decision, so Kendall scores it first;
  // its long right tail packs most objects into the lowest equal-width bin,
  // where `spread` keeps a coarse but evenly binned relation
  write("demo.csv",
        "skewed,spread,d\n"
        "1,2,1\n1.1,1,2\n1.2,4,3\n1.3,3,4\n1.4,6,5\n1.5,5,6\n"
        "1.6,8,7\n1.7,7,8\n1.8,10,9\n2,9,10\n50,12,11\n100,11,12\n");
  ASSERT_EQ(run("score " + path("demo.csv") + " --decision d --method kendall"), 0);
  EXPECT_EQ(rows("stdout.txt")[1][0], "skewed");
  ASSERT_EQ(run("score " + path("demo.csv") + " --decision d --method width:3"), 0);
  EXPECT_EQ(rows("stdout.txt")[1][0], "spread");
}

TEST_F(Cli, ScoreTransformedInputMatchesOriginal) {
  write("in.csv", "f,g,d\n1,4,10\n2,1,20\n3,3,30\n4,2,40\n5,5,35\n");
  ASSERT_EQ(run("score " + path("in.csv") + " --decision d", "orig.txt"), 0);
  ASSERT_EQ(run("transform " + path("in.csv") + " -o " + path("t.csv")), 0);
  ASSERT_EQ(run("score " + path("t.csv") + " --decision d", "trans.txt"), 0);
  EXPECT_EQ(read("orig.txt"), read("trans.txt"));
}

TEST_F(Cli, ScoreErrors) {
  write("in.csv", "f,d\n1,2\n2,1\n3,3\n");
  EXPECT_EQ(run("score " + path("in.csv") + " --decision nope"), 1);
  EXPECT_NE(read("err.txt").find("nope"), std::string::npos);
  EXPECT_EQ(run("score " + path("in.csv") + " --decision d --method gini"), 1);
}

TEST_F(Cli, MergeTwoBatches) {
  write("a.csv", "x,y\n1,2\n2,1\n");
  write("b.csv", "x,y\n5,5\n3,9\n");
  ASSERT_EQ(run("transform " + path("a.csv") + " -o " + path("ta.csv")), 0);
  ASSERT_EQ(run("transform " + path("b.csv") + " -o " + path("tb.csv")), 0);
  ASSERT_EQ(run("merge " + path("ta.csv") + " " + path("tb.csv") + " -o " + path("m.csv")), 0);
  const auto r = rows("m.csv");
  ASSERT_EQ(r.size(), 14u);
  EXPECT_EQ(r[0][0], "#kendall n=4 scheme=rowmajor-v1");
  std::size_t na_x = 0, na_y = 0;
  for (std::size_t i = 2; i < r.size(); ++i) {
    na_x += r[i][0] == "NA";
    na_y += r[i][1] == "NA";
  }
  EXPECT_EQ(na_x, 8u);
  EXPECT_EQ(na_y, 8u);
  EXPECT_EQ(r[2], (std::vector<std::string>{"A", "D"}));  // pair (0,1) from batch a
}

TEST_F(Cli, MergeMismatchedFeaturesFails) {
  write("a.csv", "x,y\n1,2\n2,1\n");
  write("b.csv", "x,z\n5,5\n3,9\n");
  ASSERT_EQ(run("transform " + path("a.csv") + " -o " + path("ta.csv")), 0);
  ASSERT_EQ(run("transform " + path("b.csv") + " -o " + path("tb.csv")), 0);
  EXPECT_EQ(run("merge " + path("ta.csv") + " " + path("tb.csv")), 1);
  EXPECT_NE(read("err.txt").find("feature sets"), std::string::npos);
}

TEST_F(Cli, SimulateBivariateShapeAndDeterminism) {
  const std::string args = "--seed 1 simulate bivariate --r 0.9 --n 100 --reps 100 -o ";
  ASSERT_EQ(run(args + path("s1.csv") + " --summary " + path("sum1.csv")), 0);
  ASSERT_EQ(run(args + path("s2.csv") + " --summary " + path("sum2.csv")), 0);
  const auto r = rows("s1.csv");
  ASSERT_EQ(r.size(), 401u);
  EXPECT_EQ(r[0], (std::vector<std::string>{"replicate", "estimator", "value"}));
  const auto s = rows("sum1.csv");
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0], (std::vector<std::string>{"series", "p05", "p25", "p50", "p75", "p95"}));
  EXPECT_EQ(s[1][0], "kendall");
  EXPECT_EQ(read("s1.csv"), read("s2.csv"));
  EXPECT_EQ(read("sum1.csv"), read("sum2.csv"));
  ASSERT_EQ(run("--seed 2 simulate bivariate --r 0.9 --n 100 --reps 100 -o " + path("s3.csv")), 0);
  EXPECT_NE(read("s1.csv"), read("s3.csv"));
}

TEST_F(Cli, SimulateMultivariateAndIntegration) {
  ASSERT_EQ(run("simulate multivariate --lambda 0.5 --n 40 --reps 3 -o " + path("mv.csv")), 0);
  EXPECT_EQ(rows("mv.csv").size(), 1u + 3 * 6);
  ASSERT_EQ(run("simulate integration --objects 12 --features 4 --reps 5 -o " + path("int.csv")), 0);
  const auto r = rows("int.csv");
  ASSERT_EQ(r.size(), 11u);
  EXPECT_EQ(r[1][1], "transformed");
  EXPECT_EQ(r[2][1], "naive");
  EXPECT_EQ(run("simulate bogus"), 1);
}

}  // namespace
