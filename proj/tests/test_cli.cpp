#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"

using namespace cnbc;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cnbc_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    write_text_file(path(name), text);
    return path(name);
  }

  std::string graph(const std::string& name, const Graph& g) const { return write(name, format_graph(g)); }

  static Invocation run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SolveCompleteGraph) {
  const auto r = run({"solve", "--k", "2", graph("k6.edges", complete_graph(6))});
  EXPECT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j["status"], "satisfiable");
  EXPECT_EQ(j["coloring"]["colors"].size(), 6u);
  EXPECT_FALSE(j["stats"].contains("wall_time_us"));
}

TEST_F(Cli, SolveExitCodes) {
  EXPECT_EQ(run({"solve", "--k", "2", graph("star.edges", star_graph(3))}).code, 1);
  const auto red = build_reduction(complete_graph(4), 3);
  const auto big = graph("k4red.edges", red.graph);
  const auto r = run({"solve", "--k", "3", "--time-limit", "0.001", "--no-count-bounds", "--no-preflight",
                      "--no-symmetry-breaking", big});
  EXPECT_TRUE(r.code == 124 || r.code == 1) << r.code;
  EXPECT_EQ(run({"solve", "--k", "2", "--engine", "brute", graph("k4.edges", complete_graph(4))}).code, 0);
  EXPECT_EQ(run({"solve", "--k", "2", "--engine", "magic", graph("k4b.edges", complete_graph(4))}).code, 2);
}

TEST_F(Cli, SolveWritesVerifiableColoring) {
  const auto g = graph("hk.edges", build_hk(3).graph);
  const auto out = path("hk.coloring.json");
  EXPECT_EQ(run({"solve", "--k", "3", "--out", out, g}).code, 0);
  const auto v = run({"verify", g, out});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.json()["balanced"], true);
}

TEST_F(Cli, CheckReportsDegreeWitness) {
  const auto r = run({"check", "--k", "2", graph("c4.edges", cycle_graph(4))});
  EXPECT_EQ(r.code, 1);
  const auto j = r.json();
  EXPECT_EQ(j["verdict"], "definitely-not-CNBC");
  EXPECT_EQ(j["checks"][0]["name"], "degree_cnbc");
  EXPECT_FALSE(j["checks"][0]["witness"].is_null());
  EXPECT_NE(r.err.find("degree_cnbc"), std::string::npos);

  const auto ok = run({"check", "--k", "2", graph("k23.edges", complete_bipartite(2, 3))});
  EXPECT_EQ(ok.json()["twin_classes"].size(), 2u);
}

TEST_F(Cli, ConstructHamming) {
  const auto prefix = path("h43");
  const auto r = run({"construct", "hamming", "--d", "4", "--k", "3", "--out", prefix});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["verified"], true);
  EXPECT_EQ(r.json()["graph"]["vertices"], 81);
  EXPECT_EQ(run({"verify", prefix + ".edges", prefix + ".coloring.json"}).code, 0);
  EXPECT_EQ(run({"construct", "hamming", "--d", "3", "--k", "3", "--out", prefix}).code, 2);
}

TEST_F(Cli, ConstructEveryKindReverifies) {
  const auto c4 = graph("c4.edges", cycle_graph(4));
  const std::vector<std::vector<std::string>> cases{
      {"construct", "complete", "--n", "6", "--k", "3", "--out", path("a")},
      {"construct", "hamming", "--d", "3", "--k", "2", "--closed-form", "--out", path("b")},
      {"construct", "hk", "--k", "3", "--additions", "2", "--out", path("c")},
      {"construct", "supergraph", c4, "--k", "2", "--out", path("d")},
  };
  for (const auto& args : cases) {
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string prefix = args.back();
    EXPECT_EQ(run({"verify", prefix + ".edges", prefix + ".coloring.json"}).code, 0) << prefix;
  }
  const auto hk = run({"construct", "hk", "--k", "3", "--additions", "2", "--out", path("e")});
  EXPECT_EQ(hk.json()["class_sizes"], nlohmann::json::parse("[10, 10, 4]"));
  EXPECT_EQ(hk.json()["graph"]["vertices"], 10 + 2 * 7);
  EXPECT_EQ(run({"construct", "complete", "--n", "5", "--k", "2", "--out", path("f")}).code, 2);
}

TEST_F(Cli, TransformAndStats) {
  const auto k2 = graph("k2.edges", complete_graph(2));
  const auto c = write("k2.json", coloring_to_json(Coloring(2, {1, 2})));
  const auto p3 = graph("p3.edges", path_graph(3));
  auto strong = run({"transform", "--kind", "strong", "--graph", k2, "--coloring", c, "--graph2", p3, "--out",
                     path("s")});
  ASSERT_EQ(strong.code, 0) << strong.err;
  EXPECT_EQ(run({"verify", path("s.edges"), path("s.coloring.json")}).code, 0);

  auto cart = run({"transform", "--kind", "cartesian-k2", "--graph", k2, "--coloring", c, "--out", path("ck")});
  ASSERT_EQ(cart.code, 0);
  EXPECT_EQ(cart.json()["target"], "nbc");
  EXPECT_EQ(run({"verify", "--mode", "nbc", path("ck.edges"), path("ck.coloring.json")}).code, 0);

  const auto bad = write("bad.json", coloring_to_json(Coloring(2, {1, 1})));
  EXPECT_EQ(run({"transform", "--kind", "direct-k2", "--graph", k2, "--coloring", bad, "--out", path("x")}).code, 2);
  EXPECT_EQ(run({"transform", "--kind", "warp", "--graph", k2, "--out", path("x")}).code, 2);

  const auto st = run({"stats", path("s.edges"), path("s.coloring.json")});
  ASSERT_EQ(st.code, 0);
  EXPECT_EQ(st.json()["cnbc"], true);
  for (const auto& check : st.json()["counting"]) EXPECT_EQ(check["passed"], true);
}

TEST_F(Cli, ReduceWithLift) {
  const auto k3 = graph("k3.edges", complete_graph(3));
  const auto proper = write("proper.json", coloring_to_json(Coloring(3, {1, 2, 3})));
  const auto r = run({"reduce", k3, "--k", "3", "--proper-coloring", proper, "--out", path("r")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json()["reduced"]["vertices"], 21);
  EXPECT_EQ(run({"verify", path("r.edges"), path("r.lifted.json")}).code, 0);
  const auto cert = nlohmann::json::parse(read_text_file(path("r.cert.json")));
  EXPECT_EQ(certificate_from_json(cert).edge_cliques.size(), 3u);
  EXPECT_EQ(run({"reduce", k3, "--k", "2", "--out", path("r2")}).code, 2);
}

TEST_F(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"solve", "--k", "2", path("missing.edges")}).code, 2);
  const auto broken = write("broken.edges", "0 1\n1 1\n");
  const auto r = run({"check", "--k", "2", broken});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_NE(r.err.find("broken.edges"), std::string::npos);
  const auto g = graph("k2.edges", complete_graph(2));
  const auto wrong = write("wrong.json", coloring_to_json(Coloring(2, {1, 2, 1})));
  EXPECT_EQ(run({"verify", g, wrong}).code, 2);
  EXPECT_EQ(run({"verify", "--mode", "sideways", g, wrong}).code, 2);
}

TEST_F(Cli, VerifyReportsViolation) {
  const auto g = graph("k4.edges", complete_graph(4));
  const auto c = write("c.csv", coloring_to_csv(Coloring(2, {1, 1, 1, 2})));
  const auto r = run({"verify", g, c});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json()["violation"]["vertex"], 0);
}

TEST_F(Cli, OutputIsDeterministic) {
  const auto g = graph("hk.edges", build_hk(4).graph);
  const auto a = run({"solve", "--k", "4", g});
  const auto b = run({"solve", "--k", "4", g});
  EXPECT_EQ(a.out, b.out);
  const auto c1 = run({"construct", "hamming", "--d", "4", "--k", "3", "--out", path("h1")});
  const auto c2 = run({"construct", "hamming", "--d", "4", "--k", "3", "--out", path("h2")});
  EXPECT_EQ(read_text_file(path("h1.edges")), read_text_file(path("h2.edges")));
  EXPECT_EQ(read_text_file(path("h1.coloring.json")), read_text_file(path("h2.coloring.json")));
}

TEST_F(Cli, BudgetEnvironment) {
  ::setenv("CNBC_VERTEX_BUDGET", "50", 1);
  const auto r = run({"construct", "hamming", "--d", "4", "--k", "3", "--out", path("h")});
  ::unsetenv("CNBC_VERTEX_BUDGET");
  set_vertex_budget(kDefaultVertexBudget);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("budget"), std::string::npos);

  ::setenv("CNBC_ENUM_BUDGET", "zero", 1);
  EXPECT_EQ(run({"solve", "--k", "2", graph("k2.edges", complete_graph(2))}).code, 2);
  ::unsetenv("CNBC_ENUM_BUDGET");
}
