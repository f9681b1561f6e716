#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result qfs_run(std::vector<std::string> args) {
  args.insert(args.begin(), "qfs");
  std::ostringstream out, err;
  const int code = qfs::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qfs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenSynthIsByteIdentical) {
  ASSERT_EQ(qfs_run({"gen-synth", "--n", "10", "--d-inf", "4", "--N", "10000", "--seed", "7", "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(qfs_run({"gen-synth", "--n", "10", "--d-inf", "4", "--N", "10000", "--seed", "7", "--out", path("b.csv")}).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  const auto truth = json::parse(slurp(path("a.csv.truth.json")));
  EXPECT_EQ(truth["informative"].size(), 4u);
  EXPECT_EQ(truth["manifest"]["seed"], 7);
}

TEST_F(Cli, SelectEndToEnd) {
  ASSERT_EQ(qfs_run({"gen-synth", "--n", "12", "--d-inf", "4", "--N", "3000", "--seed", "3", "--out", path("d.csv")}).code, 0);
  const auto r = qfs_run({"select", "--input", path("d.csv"), "--label", "y", "--k", "5", "--solver", "exhaustive"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["k"], 5);
  int ones = 0;
  for (const auto& b : j["x_star"]) ones += b.get<int>();
  EXPECT_EQ(ones, 5);
  EXPECT_EQ(j["solver"], "exhaustive");
  EXPECT_EQ(j["manifest"]["B"], 20);
  EXPECT_EQ(j["manifest"]["k"], 5);
  EXPECT_EQ(j["manifest"]["epsilon"], 1e-8);
  EXPECT_EQ(j["manifest"]["mu"], "max");
  EXPECT_EQ(j["manifest"]["seed"], 0);
  EXPECT_EQ(j["manifest"]["inputs"][0], path("d.csv"));
}

TEST_F(Cli, PipelineStagesAgreeAndIgnoreThreadCount) {
  ASSERT_EQ(qfs_run({"gen-synth", "--n", "9", "--N", "800", "--seed", "5", "--out", path("d.csv")}).code, 0);
  ASSERT_EQ(qfs_run({"discretize", "--input", path("d.csv"), "--B", "8", "--out", path("disc.json")}).code, 0);
  ASSERT_EQ(qfs_run({"mi", "--discretized", path("disc.json"), "--out", path("mi1.json")}).code, 0);
  ASSERT_EQ(qfs_run({"mi", "--discretized", path("disc.json"), "--threads", "4", "--out", path("mi4.json")}).code, 0);
  EXPECT_EQ(slurp(path("mi1.json")), slurp(path("mi4.json")).replace(slurp(path("mi4.json")).find("mi4"), 3, "mi1"));

  const auto direct = qfs_run({"select", "--input", path("d.csv"), "--B", "8", "--k", "3"});
  const auto staged = qfs_run({"select", "--mi", path("mi1.json"), "--k", "3"});
  ASSERT_EQ(direct.code, 0) << direct.err;
  ASSERT_EQ(staged.code, 0) << staged.err;
  EXPECT_EQ(json::parse(direct.out)["x_star"], json::parse(staged.out)["x_star"]);

  const auto t1 = qfs_run({"select", "--mi", path("mi1.json"), "--k", "4", "--solver", "annealing", "--shots", "20", "--seed", "9"});
  const auto t4 = qfs_run({"select", "--mi", path("mi1.json"), "--k", "4", "--solver", "annealing", "--shots", "20", "--seed", "9", "--threads", "4"});
  EXPECT_EQ(t1.out, t4.out);
}

TEST_F(Cli, BuildSolveExport) {
  std::ofstream(path("mi.json")) << R"({"importance":[3,2,1],"redundancy":[[0,0.5,0.5],[0.5,0,0.5],[0.5,0.5,0]]})";
  ASSERT_EQ(qfs_run({"build", "--mi", path("mi.json"), "--alpha", "0.5", "--out", path("q.json")}).code, 0);
  const auto solved = qfs_run({"solve", "--qubo", path("q.json")});
  ASSERT_EQ(solved.code, 0) << solved.err;
  const auto s = json::parse(solved.out);
  EXPECT_EQ(s["best"]["x"], json::array({1, 1, 0}));
  EXPECT_EQ(s["best"]["energy"], -2.0);
  EXPECT_EQ(s["manifest"]["solver"]["kind"], "exhaustive");

  const auto coo = qfs_run({"export", "--qubo", path("q.json"), "--format", "coo", "--out", path("q.txt")});
  ASSERT_EQ(coo.code, 0);
  ASSERT_EQ(qfs_run({"export", "--qubo", path("q.txt"), "--format", "coo", "--out", path("q2.txt")}).code, 0);
  EXPECT_EQ(slurp(path("q.txt")), slurp(path("q2.txt")));
  EXPECT_EQ(slurp(path("q.txt")), "0 0 -1.5\n0 1 0.5\n0 2 0.5\n1 1 -1\n1 2 0.5\n2 2 -0.5\n");

  const auto ising = qfs_run({"export", "--qubo", path("q.txt"), "--format", "ising"});
  EXPECT_EQ(json::parse(ising.out)["fields"].size(), 3u);

  const auto pen = qfs_run({"build", "--mi", path("mi.json"), "--penalty-k", "1", "--lambda", "10"});
  ASSERT_EQ(pen.code, 0) << pen.err;
  EXPECT_EQ(json::parse(pen.out)["offset"], 10.0);
}

TEST_F(Cli, SweepAndVerify) {
  std::ofstream(path("mi.json")) << R"({"importance":[3,2,1],"redundancy":[[0,0.5,0.5],[0.5,0,0.5],[0.5,0.5,0]]})";
  const auto sw = qfs_run({"sweep", "--mi", path("mi.json"), "--points", "11"});
  ASSERT_EQ(sw.code, 0) << sw.err;
  const auto j = json::parse(sw.out);
  EXPECT_TRUE(j["monotone"].get<bool>());
  EXPECT_EQ(j["points"].size(), 11u);
  EXPECT_EQ(j["points"][10]["k"], 3);

  const auto v = qfs_run({"verify-prop1", "--n", "8", "--trials", "20", "--seed", "1", "--table"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("holds on 20 instance(s)"), std::string::npos);
  EXPECT_NE(v.out.find("trial k found kind alpha lo hi"), std::string::npos);
  const auto vj = qfs_run({"verify-prop1", "--mi", path("mi.json")});
  EXPECT_EQ(vj.code, 0);
  EXPECT_EQ(json::parse(vj.out)["runs"][0]["witnesses"].size(), 4u);
}

TEST_F(Cli, EvalReports) {
  const auto rec = qfs_run({"eval", "--selected", "0,1,2,3", "--truth", "4,5,6,7", "--n", "10"});
  ASSERT_EQ(rec.code, 0) << rec.err;
  EXPECT_EQ(json::parse(rec.out)["edit_distance"], 4);
  const auto g = qfs_run({"eval", "--n", "6", "--subset", "a=0,1", "--subset", "b=1,0", "--subset", "c=4,5"});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto gj = json::parse(g.out);
  EXPECT_EQ(gj["nodes"][0]["name"], "a+b");
  EXPECT_EQ(gj["edges"][0]["w"], 2);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(qfs_run({}).code, 2);
  EXPECT_EQ(qfs_run({"select", "--k", "2", "--bogus"}).code, 2);
  EXPECT_EQ(qfs_run({"select", "--input", path("missing.csv"), "--k", "2"}).code, 2);
  std::ofstream(path("bad.csv")) << "a,b,y\n1,oops,0\n";
  const auto bad = qfs_run({"select", "--input", path("bad.csv"), "--k", "1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("oops"), std::string::npos);

  std::ofstream(path("zero.json")) << R"({"importance":[1,0],"redundancy":[[0,0.1],[0.1,0]]})";
  const auto unreachable = qfs_run({"select", "--mi", path("zero.json"), "--k", "2"});
  EXPECT_EQ(unreachable.code, 3);
  EXPECT_NE(unreachable.err.find("below"), std::string::npos);

  EXPECT_EQ(qfs_run({"select", "--mi", path("zero.json"), "--k", "3"}).code, 2);
  EXPECT_EQ(qfs_run({"verify-prop1", "--n", "13"}).code, 2);
}

TEST_F(Cli, Version) {
  const auto v = qfs_run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}
