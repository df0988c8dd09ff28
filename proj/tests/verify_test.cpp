#include <gtest/gtest.h>

#include <queue>

#include "idpp/reductions.hpp"
#include "idpp/verify.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

namespace idpp {
namespace {

const graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
const graph p3(3, {{0, 1}, {1, 2}});
const graph p5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
const graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

TEST(IsInducedPath, Examples) {
  EXPECT_FALSE(is_induced_path(k3, {0, 1, 2}));
  EXPECT_TRUE(is_induced_path(p3, {0, 1, 2}));
  EXPECT_TRUE(is_induced_path(c4, {0, 1, 2}));
  EXPECT_TRUE(is_induced_path(c4, {0}));
  EXPECT_TRUE(is_induced_path(c4, {0, 1}));
}

TEST(IsInducedPath, RejectsNonPaths) {
  EXPECT_FALSE(is_induced_path(p3, {}));
  EXPECT_FALSE(is_induced_path(p3, {0, 2}));
  EXPECT_FALSE(is_induced_path(c4, {0, 1, 0}));
  EXPECT_THROW(is_induced_path(p3, {0, 9}), graph_error);
}

TEST(MutuallyRemote, Examples) {
  EXPECT_TRUE(mutually_remote(p5, {0}, {4}));
  EXPECT_FALSE(mutually_remote(p5, {0}, {1}));
  EXPECT_FALSE(mutually_remote(p5, {0, 1}, {1, 2}));
  EXPECT_THROW(mutually_remote(p5, {0}, {5}), graph_error);
}

TEST(VerifySolution, GadgetPathOnReducedTriangle) {
  auto [inst, map] = is_to_idpp(k3);
  solution sol{{{0, {3, 0, 4}}}};
  EXPECT_TRUE(verify_idpp_solution(inst, sol).feasible);
}

TEST(VerifySolution, TwoGadgetPathsOnReducedTriangleTouch) {
  auto [inst, map] = is_to_idpp(k3);
  // a_0 = 3, b_0 = 4, a_1 = 5, b_1 = 6; the K3 edge {0,1} joins the paths.
  solution sol{{{0, {3, 0, 4}}, {1, {5, 1, 6}}}};
  verdict v = verify_idpp_solution(inst, sol);
  EXPECT_FALSE(v.feasible);
  ASSERT_EQ(v.violations.size(), 1u);
  EXPECT_EQ(v.violations[0], (violation{violation_kind::adjacent_paths, 0, 1, 0, 1}));
}

TEST(VerifySolution, EmptySolutionIsFeasible) {
  auto [inst, map] = is_to_idpp(k3);
  verdict v = verify_idpp_solution(inst, {});
  EXPECT_TRUE(v.feasible);
  EXPECT_TRUE(v.violations.empty());
}

TEST(VerifySolution, ReportsEveryViolationSorted) {
  instance inst(k3, {{0, 2}, {1, 2}});
  solution sol{{{0, {0, 1, 2}}, {1, {1, 2}}, {5, {0}}}};
  verdict v = verify_idpp_solution(inst, sol);
  EXPECT_FALSE(v.feasible);
  std::vector<violation> expected{
      {violation_kind::chord, 0, violation::none, 0, 2},
      {violation_kind::shared_node, 0, 1, 1, violation::none},
      {violation_kind::shared_node, 0, 1, 2, violation::none},
      {violation_kind::shared_node, 0, 2, 0, violation::none},
      {violation_kind::adjacent_paths, 1, 2, 1, 0},
      {violation_kind::adjacent_paths, 1, 2, 2, 0},
      {violation_kind::bad_index, 2, violation::none, violation::none, violation::none},
  };
  EXPECT_EQ(v.violations, expected);
}

TEST(VerifySolution, MalformedRoutes) {
  instance inst(p5, {{0, 4}, {0, 2}});
  solution sol{{{0, {}}, {1, {0, 2}}, {1, {0, 7}}, {0, {4, 3, 2, 1, 0}}}};
  verdict v = verify_idpp_solution(inst, sol);
  EXPECT_TRUE(v.has(violation_kind::not_a_path));
  EXPECT_TRUE(v.has(violation_kind::bad_index));
  EXPECT_TRUE(v.has(violation_kind::endpoint_mismatch));
  EXPECT_EQ(v.violations, oracle::naive_violations(inst, sol));
}

TEST(VerifyDppSolution, IgnoresChordsAndAdjacency) {
  instance inst(k3, {{0, 2}});
  EXPECT_TRUE(verify_dpp_solution(inst, {{{0, {0, 1, 2}}}}).feasible);
  instance two(p5, {{0, 1}, {2, 3}});
  EXPECT_TRUE(verify_dpp_solution(two, {{{0, {0, 1}}, {1, {2, 3}}}}).feasible);
  EXPECT_FALSE(verify_idpp_solution(two, {{{0, {0, 1}}, {1, {2, 3}}}}).feasible);
}

// BFS with ascending neighbour order; any shortest path must be chordless.
path bfs_path(const graph& g, node_id s, node_id t) {
  std::vector<node_id> parent(g.node_count(), g.node_count());
  std::queue<node_id> q;
  parent[s] = s;
  q.push(s);
  while (!q.empty()) {
    node_id u = q.front();
    q.pop();
    for (node_id v : g.neighbors(u))
      if (parent[v] == g.node_count()) {
        parent[v] = u;
        q.push(v);
      }
  }
  if (parent[t] == g.node_count()) return {};
  path p{t};
  while (p.back() != s) p.push_back(parent[p.back()]);
  return p;
}

TEST(VerifyProperties, ShortestPathsAreInduced) {
  testing::rng_type rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    graph g = testing::random_graph(rng, testing::uniform(rng, 2, 16), 0.3);
    node_id s = testing::uniform(rng, 0, g.node_count() - 1);
    node_id t = testing::uniform(rng, 0, g.node_count() - 1);
    path p = bfs_path(g, s, t);
    if (!p.empty()) {
      ASSERT_TRUE(is_induced_path(g, p));
    }
  }
}

TEST(VerifyProperties, RemoteIsSymmetric) {
  testing::rng_type rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    graph g = testing::random_graph(rng, 10, 0.25);
    path a = testing::random_walk(rng, g, testing::uniform(rng, 0, 9), 99, 3);
    path b = testing::random_walk(rng, g, testing::uniform(rng, 0, 9), 99, 3);
    ASSERT_EQ(mutually_remote(g, a, b), mutually_remote(g, b, a));
    ASSERT_EQ(mutually_remote(g, a, b), oracle::remote(g, a, b));
  }
}

TEST(VerifyProperties, AgreesWithNaiveChecker) {
  testing::rng_type rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    instance inst = testing::random_instance(rng, testing::uniform(rng, 2, 12), 0.3, testing::uniform(rng, 1, 4));
    solution sol;
    for (std::size_t i = 0; i < inst.pair_count(); ++i)
      if (testing::uniform(rng, 0, 1))
        sol.routed.push_back(
            {i, testing::random_walk(rng, inst.host(), inst.pairs()[i].source, inst.pairs()[i].sink, 6)});
    if (testing::uniform(rng, 0, 1)) testing::corrupt(rng, inst, sol);
    verdict v = verify_idpp_solution(inst, sol);
    ASSERT_EQ(v.violations, oracle::naive_violations(inst, sol));
    ASSERT_EQ(v.feasible, v.violations.empty());
  }
}

TEST(VerifyProperties, FeasibleSolutionsAreDownwardClosed) {
  testing::rng_type rng(23);
  int feasible_seen = 0;
  for (int trial = 0; trial < 2000 && feasible_seen < 200; ++trial) {
    graph g = testing::random_graph(rng, 8, 0.15);
    auto [inst, map] = is_to_idpp(g);
    std::vector<node_id> set;
    for (node_id v = 0; v < 8; ++v)
      if (testing::uniform(rng, 0, 2) == 0) set.push_back(v);
    solution sol = lift_is_solution(map, set);
    if (!verify_idpp_solution(inst, sol).feasible) continue;
    ++feasible_seen;
    for (std::uint32_t mask = 0; mask < (1u << sol.size()); ++mask) {
      solution sub;
      for (std::size_t i = 0; i < sol.size(); ++i)
        if (mask >> i & 1) sub.routed.push_back(sol.routed[i]);
      ASSERT_TRUE(verify_idpp_solution(inst, sub).feasible);
    }
  }
  EXPECT_GE(feasible_seen, 100);
}

}  // namespace
}  // namespace idpp
