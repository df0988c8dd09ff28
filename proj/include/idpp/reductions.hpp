#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "idpp/graph.hpp"
#include "idpp/verify.hpp"

namespace idpp {

/// Raised when a lift/project receives input outside its contract.
class reduction_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class reduction_kind { is_to_idpp, dpp_to_idpp };

/// Terminal gadget attached to one original node by the independent-set
/// reduction.
struct gadget {
  node_id original = 0;
  node_id a = 0;
  node_id b = 0;

  friend bool operator==(const gadget&, const gadget&) = default;
};

/// Subdivision midpoint for one original edge {u, v}, u < v.
struct midpoint {
  node_id u = 0;
  node_id v = 0;
  node_id mid = 0;

  friend bool operator==(const midpoint&, const midpoint&) = default;
};

/// Bookkeeping needed to move solutions across a reduction. Exactly one of
/// `gadgets` / `midpoints` is populated, matching `kind`.
struct reduction_map {
  reduction_kind kind = reduction_kind::is_to_idpp;
  std::size_t original_node_count = 0;
  std::vector<gadget> gadgets;      // gadgets[v].original == v
  std::vector<midpoint> midpoints;  // in canonical edge order

  friend bool operator==(const reduction_map&, const reduction_map&) = default;
};

template <typename Instance>
struct reduced {
  Instance result;
  reduction_map map;
};

/// Independent set -> IDPP. Node v of the input keeps id v; its gadget
/// terminals are a_v = n'+2v and b_v = n'+2v+1, each joined only to v, and
/// pair v is (a_v, b_v). Output: 3n' nodes, m'+2n' edges, n' pairs.
inline reduced<idpp_instance> is_to_idpp(const graph& g) {
  const std::size_t n = g.node_count();
  std::vector<edge> edges = g.edges();
  edges.reserve(g.edge_count() + 2 * n);

  reduction_map map{reduction_kind::is_to_idpp, n, {}, {}};
  std::vector<terminal_pair> pairs;
  pairs.reserve(n);
  for (node_id v = 0; v < n; ++v) {
    node_id a = n + 2 * v, b = n + 2 * v + 1;
    edges.emplace_back(a, v);
    edges.emplace_back(b, v);
    map.gadgets.push_back({v, a, b});
    pairs.push_back({a, b});
  }
  return {idpp_instance(graph(3 * n, edges), std::move(pairs)), std::move(map)};
}

/// Routes pair v along [a_v, v, b_v] for each v in `independent`.
/// Independence is not checked; a dependent set lifts to an infeasible
/// solution.
inline idpp_solution lift_is_solution(const reduction_map& map, std::vector<node_id> independent) {
  if (map.kind != reduction_kind::is_to_idpp)
    throw reduction_error("lift_is_solution needs an is_to_idpp map");
  std::sort(independent.begin(), independent.end());
  if (std::adjacent_find(independent.begin(), independent.end()) != independent.end())
    throw reduction_error("independent set lists a node twice");

  idpp_solution sol;
  for (node_id v : independent) {
    if (v >= map.original_node_count)
      throw reduction_error("node " + std::to_string(v) + " is not an original node");
    const gadget& gd = map.gadgets[v];
    sol.routed.push_back({v, {gd.a, v, gd.b}});
  }
  return sol;
}

/// Middle node of each routed gadget path, sorted. Feasibility must have
/// been established by the caller; only the path shapes are checked here.
inline std::vector<node_id> project_idpp_solution(const reduction_map& map, const idpp_solution& sol) {
  if (map.kind != reduction_kind::is_to_idpp)
    throw reduction_error("project_idpp_solution needs an is_to_idpp map");
  std::vector<node_id> out;
  out.reserve(sol.size());
  for (const auto& [pair, nodes] : sol.routed) {
    if (pair >= map.original_node_count)
      throw reduction_error("pair index " + std::to_string(pair) + " out of range");
    const gadget& gd = map.gadgets[pair];
    if (nodes != path{gd.a, gd.original, gd.b})
      throw reduction_error("route for pair " + std::to_string(pair) +
                            " is not the gadget path; solution is infeasible");
    out.push_back(gd.original);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw reduction_error("a pair is routed twice; solution is infeasible");
  return out;
}

/// Node-disjoint paths -> IDPP by subdividing every edge once. Original
/// nodes keep their ids; the midpoint of the i-th canonical edge is n+i.
/// Output: n+m nodes, 2m edges, pairs unchanged.
inline reduced<idpp_instance> dpp_to_idpp(const dpp_instance& inst) {
  const graph& g = inst.host();
  const std::size_t n = g.node_count();
  reduction_map map{reduction_kind::dpp_to_idpp, n, {}, {}};
  std::vector<edge> edges;
  edges.reserve(2 * g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto [u, v] = g.edges()[i];
    node_id x = n + i;
    edges.emplace_back(u, x);
    edges.emplace_back(x, v);
    map.midpoints.push_back({u, v, x});
  }
  return {idpp_instance(graph(n + g.edge_count(), edges), inst.pairs()), std::move(map)};
}

namespace detail {

inline std::map<edge, node_id> midpoint_lookup(const reduction_map& map) {
  std::map<edge, node_id> lookup;
  for (const auto& m : map.midpoints) lookup.emplace(edge{m.u, m.v}, m.mid);
  return lookup;
}

}  // namespace detail

/// Original graph recorded by a dpp_to_idpp map.
inline graph original_graph(const reduction_map& map) {
  if (map.kind != reduction_kind::dpp_to_idpp)
    throw reduction_error("only dpp_to_idpp maps record the original graph");
  std::vector<edge> edges;
  edges.reserve(map.midpoints.size());
  for (const auto& m : map.midpoints) edges.emplace_back(m.u, m.v);
  return graph(map.original_node_count, edges);
}

/// Replaces every step u->v of each path by u->mid(u,v)->v. Paths must be
/// simple in the original graph and pairwise node-disjoint.
inline idpp_solution lift_dpp_solution(const reduction_map& map, const dpp_solution& sol) {
  const graph g = original_graph(map);
  std::vector<bool> used(g.node_count(), false);
  for (const auto& [pair, nodes] : sol.routed) {
    bool in_range = std::all_of(nodes.begin(), nodes.end(), [&g](node_id v) { return g.contains(v); });
    if (!in_range || !is_simple_path(g, nodes))
      throw reduction_error("route for pair " + std::to_string(pair) + " is not a simple path");
    for (node_id v : nodes) {
      if (used[v]) throw reduction_error("routes share node " + std::to_string(v));
      used[v] = true;
    }
  }

  auto lookup = detail::midpoint_lookup(map);
  idpp_solution out;
  for (const auto& [pair, nodes] : sol.routed) {
    path lifted{nodes.front()};
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      node_id u = nodes[i], v = nodes[i + 1];
      lifted.push_back(lookup.at(edge{std::min(u, v), std::max(u, v)}));
      lifted.push_back(v);
    }
    out.routed.push_back({pair, std::move(lifted)});
  }
  return out;
}

/// Drops the midpoints from each path. Paths must alternate original node,
/// midpoint, original node, with every midpoint sitting between the two
/// endpoints of its edge.
inline dpp_solution project_dpp_solution(const reduction_map& map, const idpp_solution& sol) {
  if (map.kind != reduction_kind::dpp_to_idpp)
    throw reduction_error("project_dpp_solution needs a dpp_to_idpp map");
  const std::size_t n = map.original_node_count;

  dpp_solution out;
  for (const auto& [pair, nodes] : sol.routed) {
    if (nodes.empty() || nodes.size() % 2 == 0)
      throw reduction_error("route for pair " + std::to_string(pair) + " has the wrong shape");
    path projected;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (i % 2 == 0) {
        if (nodes[i] >= n)
          throw reduction_error("route for pair " + std::to_string(pair) +
                                " has a midpoint where an original node belongs");
        projected.push_back(nodes[i]);
        continue;
      }
      node_id x = nodes[i];
      if (x < n || x - n >= map.midpoints.size())
        throw reduction_error("route for pair " + std::to_string(pair) + " skips a midpoint");
      const midpoint& m = map.midpoints[x - n];
      auto [lo, hi] = std::minmax(nodes[i - 1], nodes[i + 1]);
      if (m.u != lo || m.v != hi)
        throw reduction_error("midpoint " + std::to_string(x) + " is off its edge");
    }
    out.routed.push_back({pair, std::move(projected)});
  }
  return out;
}

}  // namespace idpp
