#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "idpp/graph.hpp"

namespace idpp {

using path = std::vector<node_id>;

/// One connected pair inside a solution.
struct routing {
  std::size_t pair = 0;
  path nodes;

  friend bool operator==(const routing&, const routing&) = default;
};

/// A (candidate) solution: routed pairs with one path each. The objective
/// value is routed.size(). Used for both IDPP and node-disjoint solutions.
struct solution {
  std::vector<routing> routed;

  std::size_t size() const noexcept { return routed.size(); }
  friend bool operator==(const solution&, const solution&) = default;
};

using idpp_solution = solution;
using dpp_solution = solution;

/// True iff p is a simple path in g with no chord. A single node and a
/// single edge both count.
inline bool is_induced_path(const graph& g, const path& p) {
  if (p.empty()) return false;
  for (node_id v : p) g.check(v);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j]) return false;
      bool adj = g.adjacent(p[i], p[j]);
      if (j == i + 1 ? !adj : adj) return false;
    }
  return true;
}

/// Simple path (distinct nodes, consecutive ones adjacent); chords allowed.
inline bool is_simple_path(const graph& g, const path& p) {
  if (p.empty()) return false;
  for (node_id v : p) g.check(v);
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (!g.adjacent(p[i], p[i + 1])) return false;
  path sorted = p;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

/// No shared node and no edge between a node of p1 and a node of p2.
inline bool mutually_remote(const graph& g, const path& p1, const path& p2) {
  for (node_id v : p1) g.check(v);
  for (node_id v : p2) g.check(v);
  for (node_id u : p1)
    for (node_id v : p2)
      if (u == v || g.adjacent(u, v)) return false;
  return true;
}

enum class violation_kind {
  not_a_path,
  chord,
  shared_node,
  adjacent_paths,
  endpoint_mismatch,
  bad_index,
};

inline constexpr std::string_view to_string(violation_kind k) noexcept {
  switch (k) {
    case violation_kind::not_a_path: return "NOT_A_PATH";
    case violation_kind::chord: return "CHORD";
    case violation_kind::shared_node: return "SHARED_NODE";
    case violation_kind::adjacent_paths: return "ADJACENT_PATHS";
    case violation_kind::endpoint_mismatch: return "ENDPOINT_MISMATCH";
    case violation_kind::bad_index: return "BAD_INDEX";
  }
  return "UNKNOWN";
}

/// A single defect. `route`/`other` index into solution::routed; `u`/`v`
/// are node ids. Unused fields hold `none`.
///
///   NOT_A_PATH        route; u = offending node (empty path: u = none;
///                     non-adjacent step: u, v = the step's endpoints)
///   CHORD             route; {u, v} = edge joining non-consecutive nodes
///   SHARED_NODE       route < other; u = common node
///   ADJACENT_PATHS    route < other; edge {u, v}, u only on route, v only on other
///   ENDPOINT_MISMATCH route
///   BAD_INDEX         route; other = earlier route with the same pair index
struct violation {
  static constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  violation_kind kind{};
  std::size_t route = none;
  std::size_t other = none;
  node_id u = none;
  node_id v = none;

  auto key() const { return std::tie(kind, route, other, u, v); }
  friend bool operator==(const violation& a, const violation& b) { return a.key() == b.key(); }
  friend bool operator<(const violation& a, const violation& b) { return a.key() < b.key(); }

  std::string describe() const {
    std::string s(to_string(kind));
    auto field = [&s](const char* name, std::size_t value) {
      if (value != none) s += std::string(" ") + name + "=" + std::to_string(value);
    };
    field("route", route);
    field("other", other);
    field("u", u);
    field("v", v);
    return s;
  }
};

struct verdict {
  bool feasible = true;
  std::vector<violation> violations;  // sorted; empty iff feasible

  bool has(violation_kind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const violation& x) { return x.kind == k; });
  }
};

namespace detail {

enum class disjointness { induced, node };

// Shared driver for both verifiers. Routes with an empty path or an
// out-of-range node are reported and then left out of the node-level checks,
// since adjacency cannot be queried for them.
inline verdict check_solution(const instance& inst, const solution& sol, disjointness mode) {
  const graph& g = inst.host();
  std::vector<violation> out;
  auto report = [&out](violation_kind k, std::size_t r, std::size_t o = violation::none,
                       node_id u = violation::none, node_id v = violation::none) {
    out.push_back(violation{k, r, o, u, v});
  };

  std::vector<bool> usable(sol.routed.size(), false);
  std::vector<std::size_t> first_route_for_pair(inst.pair_count(), violation::none);

  for (std::size_t r = 0; r < sol.routed.size(); ++r) {
    const auto& [pair, nodes] = sol.routed[r];

    bool index_ok = pair < inst.pair_count();
    if (!index_ok) {
      report(violation_kind::bad_index, r);
    } else if (first_route_for_pair[pair] != violation::none) {
      report(violation_kind::bad_index, r, first_route_for_pair[pair]);
    } else {
      first_route_for_pair[pair] = r;
    }

    if (nodes.empty()) {
      report(violation_kind::not_a_path, r);
      continue;
    }

    if (index_ok) {
      const auto& tp = inst.pairs()[pair];
      if (nodes.front() != tp.source || nodes.back() != tp.sink)
        report(violation_kind::endpoint_mismatch, r);
    }

    bool ids_ok = true;
    for (node_id v : nodes)
      if (!g.contains(v)) {
        report(violation_kind::not_a_path, r, violation::none, v);
        ids_ok = false;
      }
    if (!ids_ok) continue;
    usable[r] = true;

    path sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    for (auto it = sorted.begin(); it != sorted.end();) {
      auto next = std::upper_bound(it, sorted.end(), *it);
      if (next - it > 1) report(violation_kind::not_a_path, r, violation::none, *it);
      it = next;
    }
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<edge> steps;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      node_id a = nodes[i], b = nodes[i + 1];
      if (a == b) continue;  // already reported as a repeated node
      if (!g.adjacent(a, b))
        report(violation_kind::not_a_path, r, violation::none, a, b);
      steps.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(steps.begin(), steps.end());

    if (mode == disjointness::induced) {
      // A chord is an edge between two path nodes that the path never
      // traverses directly.
      for (node_id a : sorted)
        for (node_id b : g.neighbors(a))
          if (a < b && std::binary_search(sorted.begin(), sorted.end(), b) &&
              !std::binary_search(steps.begin(), steps.end(), edge{a, b}))
            report(violation_kind::chord, r, violation::none, a, b);
    }
  }

  std::vector<path> node_sets(sol.routed.size());
  for (std::size_t r = 0; r < sol.routed.size(); ++r) {
    if (!usable[r]) continue;
    node_sets[r] = sol.routed[r].nodes;
    std::sort(node_sets[r].begin(), node_sets[r].end());
    node_sets[r].erase(std::unique(node_sets[r].begin(), node_sets[r].end()), node_sets[r].end());
  }
  auto on = [](const path& set, node_id v) { return std::binary_search(set.begin(), set.end(), v); };

  for (std::size_t r1 = 0; r1 < sol.routed.size(); ++r1) {
    if (!usable[r1]) continue;
    for (std::size_t r2 = r1 + 1; r2 < sol.routed.size(); ++r2) {
      if (!usable[r2]) continue;
      const path& a = node_sets[r1];
      const path& b = node_sets[r2];
      for (node_id x : a)
        if (on(b, x)) report(violation_kind::shared_node, r1, r2, x);
      if (mode != disjointness::induced) continue;
      for (node_id x : a) {
        if (on(b, x)) continue;
        for (node_id y : g.neighbors(x))
          if (on(b, y) && !on(a, y)) report(violation_kind::adjacent_paths, r1, r2, x, y);
      }
    }
  }

  std::sort(out.begin(), out.end());
  return verdict{out.empty(), std::move(out)};
}

}  // namespace detail

/// Full feasibility check of an IDPP solution. Never throws on malformed
/// solutions; every defect found is listed, sorted by (kind, route, other, u, v).
inline verdict verify_idpp_solution(const instance& inst, const solution& sol) {
  return detail::check_solution(inst, sol, detail::disjointness::induced);
}

/// Same as verify_idpp_solution but for the node-disjoint problem: paths
/// only need to be simple and pairwise node-disjoint. CHORD and
/// ADJACENT_PATHS are never reported.
inline verdict verify_dpp_solution(const instance& inst, const solution& sol) {
  return detail::check_solution(inst, sol, detail::disjointness::node);
}

}  // namespace idpp
