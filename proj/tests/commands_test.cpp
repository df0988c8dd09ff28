#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "idpp/commands.hpp"

namespace idpp::cli {
namespace {

namespace fs = std::filesystem;

class Commands : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("idpp_cmd_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    auto p = (dir_ / name).string();
    std::ofstream(p) << content;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out, err;
};

const char* k3_text = "g 3 3\ne 0 1\ne 0 2\ne 1 2\n";
const char* c5_text = "g 5 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 0 4\n";

TEST_F(Commands, ReduceIndependentSet) {
  int code = cmd_reduce({"is2idpp", file("k3.graph", k3_text), path("k3.inst"), ""}, out, err);
  EXPECT_EQ(code, exit_ok) << err.str();
  EXPECT_EQ(out.str(), "n=9 m=9 k=3\n");
  EXPECT_EQ(slurp(path("k3.inst.map")), "map is2idpp 3\nmap a 0 3 4\nmap a 1 5 6\nmap a 2 7 8\n");
}

TEST_F(Commands, ReduceEdgelessDpp) {
  int code = cmd_reduce({"dpp2idpp", file("e.inst", "g 4 0\nt 0 3\n"), path("e.out"), path("e.map")}, out, err);
  EXPECT_EQ(code, exit_ok);
  EXPECT_EQ(out.str(), "n=4 m=0 k=1\n");
  EXPECT_EQ(slurp(path("e.out")), "g 4 0\nt 0 3\n");
  EXPECT_EQ(slurp(path("e.map")), "map dpp2idpp 4\n");
}

TEST_F(Commands, ReduceMalformedInput) {
  int code = cmd_reduce({"is2idpp", file("bad.graph", "g 3 1\ne 0 x\n"), path("o"), ""}, out, err);
  EXPECT_EQ(code, exit_parse);
  EXPECT_NE(err.str().find("line 2"), std::string::npos) << err.str();
}

TEST_F(Commands, MissingFileIsIoError) {
  EXPECT_EQ(cmd_reduce({"is2idpp", path("nope"), path("o"), ""}, out, err), exit_io);
  EXPECT_EQ(cmd_verify(path("nope"), path("nope2"), out, err), exit_io);
  EXPECT_EQ(cmd_reduce({"is2idpp", file("k3.graph", k3_text), path("no/such/dir/o"), ""}, out, err), exit_io);
}

TEST_F(Commands, SolveExactOnReducedCycle) {
  ASSERT_EQ(cmd_reduce({"is2idpp", file("c5.graph", c5_text), path("c5.inst"), ""}, out, err), exit_ok);
  out.str("");
  solve_options opt;
  opt.algo = "exact";
  opt.instance = path("c5.inst");
  opt.solution_output = path("c5.sol");
  ASSERT_EQ(cmd_solve(opt, out, err), exit_ok) << err.str();
  auto report = nlohmann::json::parse(out.str());
  EXPECT_EQ(report["size"], 2);
  EXPECT_EQ(report["optimal"], true);
  EXPECT_EQ(report["n"], 15);
  EXPECT_FALSE(report.contains("wall_time_ms"));

  std::ostringstream verdict_out;
  EXPECT_EQ(cmd_verify(path("c5.inst"), path("c5.sol"), verdict_out, err), exit_ok);
  EXPECT_EQ(verdict_out.str(), "feasible 1\n");
}

TEST_F(Commands, SolveGreedyOnReducedEdgeless) {
  ASSERT_EQ(cmd_reduce({"is2idpp", file("e.graph", "g 3 0\n"), path("e.inst"), ""}, out, err), exit_ok);
  out.str("");
  solve_options opt;
  opt.algo = "greedy";
  opt.instance = path("e.inst");
  ASSERT_EQ(cmd_solve(opt, out, err), exit_ok);
  auto report = nlohmann::json::parse(out.str());
  EXPECT_EQ(report["size"], 3);
  EXPECT_EQ(report["optimal"], false);
}

TEST_F(Commands, SolveBoostedRefusesSmallEpsilon) {
  solve_options opt;
  opt.algo = "boosted";
  opt.epsilon = 0.1;
  opt.instance = file("eight.inst", "g 8 1\ne 0 1\nt 0 1\n");
  EXPECT_EQ(cmd_solve(opt, out, err), exit_budget);
  EXPECT_NE(err.str().find("177147"), std::string::npos) << err.str();
  EXPECT_TRUE(out.str().empty());
}

TEST_F(Commands, SolveBoostedDispatch) {
  solve_options opt;
  opt.algo = "boosted";
  opt.epsilon = 0.5;
  opt.budget.max_nodes_exact = 26;
  opt.instance = file("small.inst", "g 4 3\ne 0 1\ne 1 2\ne 2 3\nt 0 3\n");
  ASSERT_EQ(cmd_solve(opt, out, err), exit_ok) << err.str();
  auto report = nlohmann::json::parse(out.str());
  EXPECT_EQ(report["case"], "brute_force");
  EXPECT_EQ(report["threshold"], 27);
  EXPECT_EQ(report["size"], 1);
}

TEST_F(Commands, SolveRejectsBadInputs) {
  solve_options opt;
  opt.algo = "exact";
  opt.instance = file("bad.inst", "g 2 1\ne 0 1\nt 1 1\n");
  EXPECT_EQ(cmd_solve(opt, out, err), exit_parse);
  opt.instance = file("big.inst", "g 21 0\n");
  EXPECT_EQ(cmd_solve(opt, out, err), exit_budget);
  opt.algo = "boosted";
  opt.epsilon = 1.5;
  EXPECT_EQ(cmd_solve(opt, out, err), exit_parse);
}

TEST_F(Commands, VerifyReportsViolations) {
  ASSERT_EQ(cmd_reduce({"is2idpp", file("k3.graph", k3_text), path("k3.inst"), ""}, out, err), exit_ok);
  std::ostringstream v1;
  EXPECT_EQ(cmd_verify(path("k3.inst"), file("dep.sol", "r 0 3 0 4\nr 1 5 1 6\n"), v1, err), exit_infeasible);
  EXPECT_EQ(v1.str(), "feasible 0\nADJACENT_PATHS route=0 other=1 u=0 v=1\n");

  std::ostringstream v2;
  EXPECT_EQ(cmd_verify(path("k3.inst"), file("end.sol", "r 0 4 0 3\n"), v2, err), exit_infeasible);
  EXPECT_EQ(v2.str(), "feasible 0\nENDPOINT_MISMATCH route=0\n");

  std::ostringstream v3;
  EXPECT_EQ(cmd_verify(path("k3.inst"), file("ok.sol", "r 2 7 2 8\n"), v3, err), exit_ok);
  EXPECT_EQ(v3.str(), "feasible 1\n");

  EXPECT_EQ(cmd_verify(path("k3.inst"), file("junk.sol", "r x\n"), v3, err), exit_parse);
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

TEST_F(Commands, BenchGnp) {
  bench_options opt;
  opt.nodes = 6;
  opt.p = 0.3;
  opt.trials = 50;
  opt.seed = 7;
  ASSERT_EQ(cmd_bench(opt, out, err), exit_ok) << err.str();
  auto rows = lines_of(out.str());
  ASSERT_EQ(rows.size(), 51u);
  EXPECT_EQ(rows[0], "trial,n_prime,m_prime,n,m,k,exact,greedy,ratio,sqrt_m,ratio_within_sqrt_m,sqrt_m_lt_n");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    auto cells = split_csv(rows[i]);
    ASSERT_EQ(cells.size(), 12u) << rows[i];
    EXPECT_GE(std::stod(cells[8]), 1.0);
    EXPECT_EQ(cells[10], "1");
  }
}

TEST_F(Commands, BenchSparseEdgeCounts) {
  bench_options opt;
  opt.family = bench_family::sparse;
  opt.alpha = 1.2;
  opt.trials = 3;
  opt.seed = 1;
  std::size_t previous_m = 0;
  for (std::size_t n : {5, 10, 20, 40}) {
    opt.nodes = n;
    std::ostringstream csv;
    ASSERT_EQ(cmd_bench(opt, csv, err), exit_ok);
    auto rows = lines_of(csv.str());
    ASSERT_EQ(rows.size(), 4u);
    std::size_t m_prime = std::stoul(split_csv(rows[1])[2]);
    EXPECT_EQ(m_prime, static_cast<std::size_t>(std::round(std::pow(n, 1.2))));
    EXPECT_LT(m_prime, n * (n - 1) / 2);
    EXPECT_GT(m_prime, previous_m);
    previous_m = m_prime;
    // Beyond the exact budget the exact column stays empty.
    if (3 * n > 20) {
      EXPECT_EQ(split_csv(rows[1])[6], "");
    }
  }
}

TEST_F(Commands, BenchHeaderOnly) {
  bench_options opt;
  opt.trials = 0;
  ASSERT_EQ(cmd_bench(opt, out, err), exit_ok);
  EXPECT_EQ(lines_of(out.str()).size(), 1u);
}

TEST_F(Commands, BenchRejectsBadParams) {
  bench_options opt;
  opt.p = 1.5;
  EXPECT_EQ(cmd_bench(opt, out, err), exit_parse);
  opt.family = bench_family::sparse;
  opt.alpha = 2.5;
  EXPECT_EQ(cmd_bench(opt, out, err), exit_parse);
}

TEST_F(Commands, BenchFlagsShortestPathRatioViolations) {
  // The shortest-path rule can exceed the bound; either way the exit code and
  // diagnostics must agree.
  bench_options opt;
  opt.family = bench_family::gnp;
  opt.nodes = 6;
  opt.p = 0.3;
  opt.trials = 400;
  opt.seed = 3;
  opt.rule = greedy_rule::shortest_path;
  std::ostringstream csv, diag;
  int code = cmd_bench(opt, csv, diag);
  if (code == exit_infeasible) {
    EXPECT_NE(diag.str().find("ratio violation"), std::string::npos);
  } else {
    EXPECT_EQ(code, exit_ok);
  }
}

TEST_F(Commands, OutputsAreDeterministic) {
  std::string k3 = file("k3.graph", k3_text);
  auto run_reduce = [&] {
    std::ostringstream o, e;
    cmd_reduce({"is2idpp", k3, path("r.inst"), ""}, o, e);
    return o.str() + slurp(path("r.inst")) + slurp(path("r.inst.map"));
  };
  EXPECT_EQ(run_reduce(), run_reduce());

  auto run_solve = [&](const std::string& algo, unsigned jobs) {
    solve_options opt;
    opt.algo = algo;
    opt.instance = path("r.inst");
    opt.budget.jobs = jobs;
    opt.budget.max_nodes_exact = 26;
    std::ostringstream o, e;
    cmd_solve(opt, o, e);
    return o.str();
  };
  for (const char* algo : {"exact", "greedy", "boosted"}) EXPECT_EQ(run_solve(algo, 1), run_solve(algo, 3));

  auto run_bench_once = [] {
    bench_options opt;
    opt.trials = 20;
    opt.seed = 99;
    std::ostringstream o, e;
    cmd_bench(opt, o, e);
    return o.str();
  };
  EXPECT_EQ(run_bench_once(), run_bench_once());
}

}  // namespace
}  // namespace idpp::cli
