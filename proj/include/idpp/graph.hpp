#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace idpp {

using node_id = std::size_t;
using edge = std::pair<node_id, node_id>;

/// Raised for structurally invalid graph input or out-of-range node ids.
class graph_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Simple undirected graph over nodes 0..node_count()-1.
///
/// Immutable after construction. Edges are kept canonical (u < v, sorted)
/// and each node owns a sorted neighbour list, so adjacent() is a binary
/// search and neighbors() is a view over contiguous storage.
class graph {
public:
  graph() = default;

  /// Rejects out-of-range endpoints, self-loops and duplicate edges.
  /// Duplicates are an error rather than silently merged: callers relying
  /// on exact edge counts must see them.
  graph(std::size_t node_count, const std::vector<edge>& edges)
      : node_count_(node_count), adjacency_(node_count) {
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u >= node_count || v >= node_count)
        throw graph_error("edge (" + std::to_string(u) + "," + std::to_string(v) +
                          ") has an endpoint outside [0," + std::to_string(node_count) + ")");
      if (u == v)
        throw graph_error("self-loop at node " + std::to_string(u));
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
      throw graph_error("duplicate edge (" + std::to_string(dup->first) + "," +
                        std::to_string(dup->second) + ")");
    for (auto [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& list : adjacency_) std::sort(list.begin(), list.end());
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Canonical edge list: u < v, lexicographically sorted.
  const std::vector<edge>& edges() const noexcept { return edges_; }

  bool adjacent(node_id u, node_id v) const {
    check(u);
    check(v);
    const auto& list = adjacency_[u];
    return std::binary_search(list.begin(), list.end(), v);
  }

  /// Sorted ascending.
  const std::vector<node_id>& neighbors(node_id v) const {
    check(v);
    return adjacency_[v];
  }

  std::size_t degree(node_id v) const { return neighbors(v).size(); }

  bool contains(node_id v) const noexcept { return v < node_count_; }

  void check(node_id v) const {
    if (v >= node_count_)
      throw graph_error("node " + std::to_string(v) + " is not in [0," +
                        std::to_string(node_count_) + ")");
  }

  friend bool operator==(const graph& a, const graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_;
  }

private:
  std::size_t node_count_ = 0;
  std::vector<edge> edges_;
  std::vector<std::vector<node_id>> adjacency_;
};

/// Induced subgraph with the new-id -> original-id mapping.
struct subgraph {
  graph g;
  std::vector<node_id> original;  // original[new_id]
};

/// Induced subgraph on every node that is neither in `removed` nor adjacent
/// to a node of `removed`. Surviving nodes keep their relative order.
inline subgraph remove_closed_neighborhood(const graph& g, const std::vector<node_id>& removed) {
  std::vector<bool> dead(g.node_count(), false);
  for (node_id v : removed) {
    g.check(v);
    dead[v] = true;
    for (node_id w : g.neighbors(v)) dead[w] = true;
  }

  subgraph out;
  std::vector<node_id> new_id(g.node_count(), 0);
  for (node_id v = 0; v < g.node_count(); ++v) {
    if (dead[v]) continue;
    new_id[v] = out.original.size();
    out.original.push_back(v);
  }
  std::vector<edge> kept;
  for (auto [u, v] : g.edges())
    if (!dead[u] && !dead[v]) kept.emplace_back(new_id[u], new_id[v]);
  out.g = graph(out.original.size(), kept);
  return out;
}

/// Source/sink pair. Source and sink must differ.
struct terminal_pair {
  node_id source = 0;
  node_id sink = 0;

  friend bool operator==(const terminal_pair&, const terminal_pair&) = default;
};

/// A graph plus an ordered list of terminal pairs. Distinct pairs may share
/// terminals; that only matters for solutions.
class instance {
public:
  instance() = default;

  instance(graph g, std::vector<terminal_pair> pairs) : graph_(std::move(g)), pairs_(std::move(pairs)) {
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      const auto& p = pairs_[i];
      if (!graph_.contains(p.source) || !graph_.contains(p.sink))
        throw graph_error("pair " + std::to_string(i) + " has a terminal outside the graph");
      if (p.source == p.sink)
        throw graph_error("pair " + std::to_string(i) + " has source == sink (" +
                          std::to_string(p.source) + ")");
    }
  }

  const graph& host() const noexcept { return graph_; }
  const std::vector<terminal_pair>& pairs() const noexcept { return pairs_; }
  std::size_t pair_count() const noexcept { return pairs_.size(); }

  friend bool operator==(const instance&, const instance&) = default;

private:
  graph graph_;
  std::vector<terminal_pair> pairs_;
};

// Both problems share the same instance shape; the names document intent.
using idpp_instance = instance;
using dpp_instance = instance;

}  // namespace idpp
