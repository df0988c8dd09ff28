#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "idpp/graph.hpp"
#include "idpp/verify.hpp"

namespace idpp {

/// Exact solvers work on 64-bit node masks.
inline constexpr std::size_t exact_node_limit = 64;

struct solve_budget {
  std::size_t max_nodes_exact = 20;
  /// Paths with more nodes than this are never enumerated.
  std::optional<std::size_t> max_path_nodes;
  std::optional<std::chrono::duration<double>> time_limit;
  /// Worker threads for the exact IDPP/DPP search. Output does not depend on it.
  unsigned jobs = 1;
};

/// The instance is too large for the exact region of the budget.
class budget_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class solve_status {
  optimal,
  time_limited,  // best routing found before the deadline
  path_limited,  // optimal among paths within max_path_nodes
  heuristic,     // produced by a non-exact procedure
};

inline constexpr const char* to_string(solve_status s) noexcept {
  switch (s) {
    case solve_status::optimal: return "optimal";
    case solve_status::time_limited: return "time_limited";
    case solve_status::path_limited: return "path_limited";
    case solve_status::heuristic: return "heuristic";
  }
  return "unknown";
}

struct exact_result {
  solution sol;
  solve_status status = solve_status::optimal;

  bool optimal() const noexcept { return status == solve_status::optimal; }
};

namespace detail {

using mask = std::uint64_t;

inline constexpr mask bit(node_id v) noexcept { return mask{1} << v; }

struct bit_graph {
  std::size_t n = 0;
  std::vector<mask> nbr;

  explicit bit_graph(const graph& g) : n(g.node_count()), nbr(g.node_count(), 0) {
    for (auto [u, v] : g.edges()) {
      nbr[u] |= bit(v);
      nbr[v] |= bit(u);
    }
  }

  mask all() const noexcept { return n == 64 ? ~mask{0} : bit(n) - 1; }
};

inline void check_exact_budget(const graph& g, const solve_budget& budget, const char* what) {
  if (budget.max_nodes_exact < 1) throw std::invalid_argument("max_nodes_exact must be at least 1");
  if (g.node_count() > budget.max_nodes_exact)
    throw budget_error(std::string(what) + ": graph has " + std::to_string(g.node_count()) +
                       " nodes, exact budget allows " + std::to_string(budget.max_nodes_exact));
  if (g.node_count() > exact_node_limit)
    throw budget_error(std::string(what) + ": exact solvers handle at most " +
                       std::to_string(exact_node_limit) + " nodes");
}

/// Lazily enumerates s-t paths inside `alive`, ordered by edge count and
/// then lexicographically by node sequence. Induced mode yields chordless
/// paths only; node mode yields all simple paths.
class path_enumerator {
public:
  path_enumerator(const bit_graph& g, disjointness mode, std::optional<std::size_t> max_nodes)
      : g_(g), mode_(mode), max_nodes_(max_nodes) {}

  /// Calls visit(path, node_mask) until it returns true. Returns whether a
  /// visit returned true. Reentrant: visit may call run again.
  template <typename Visit>
  bool run(mask alive, node_id s, node_id t, Visit&& visit) {
    if (!(alive & bit(s)) || !(alive & bit(t))) return false;
    walk w{alive, t, 0, false, path{s}};
    for (std::size_t edges = 1;; ++edges) {
      if (max_nodes_ && edges + 1 > *max_nodes_) {
        if (edges == 1 || w.deeper) truncated_ = true;
        return false;
      }
      w.length = edges;
      w.deeper = false;
      w.current.assign(1, s);
      if (extend(w, bit(s), visit)) return true;
      if (!w.deeper) return false;
    }
  }

  /// Some path was skipped because of max_nodes.
  bool truncated() const noexcept { return truncated_; }

private:
  struct walk {
    mask alive;
    node_id target;
    std::size_t length;  // edges in the paths of the current round
    bool deeper;         // a longer path may exist
    path current;
  };

  template <typename Visit>
  bool extend(walk& w, mask on_path, Visit& visit) {
    const node_id last = w.current.back();
    if (last == w.target) return visit(static_cast<const path&>(w.current), on_path);

    mask candidates = g_.nbr[last] & w.alive & ~on_path;
    // A non-final node adjacent to the sink forces the sink next.
    if (mode_ == disjointness::induced && (g_.nbr[last] & bit(w.target)))
      candidates &= bit(w.target);
    if (w.current.size() == w.length) {
      // Anything but the sink here would need a longer path.
      if (candidates & ~bit(w.target)) w.deeper = true;
      candidates &= bit(w.target);
    } else {
      candidates &= ~bit(w.target);
    }

    while (candidates) {
      node_id v = static_cast<node_id>(std::countr_zero(candidates));
      candidates &= candidates - 1;
      if (mode_ == disjointness::induced && (g_.nbr[v] & on_path) != bit(last)) continue;
      w.current.push_back(v);
      bool stop = extend(w, on_path | bit(v), visit);
      w.current.pop_back();
      if (stop) return true;
    }
    return false;
  }

  const bit_graph& g_;
  disjointness mode_;
  std::optional<std::size_t> max_nodes_;
  bool truncated_ = false;
};

class deadline {
public:
  explicit deadline(std::optional<std::chrono::duration<double>> limit) {
    if (limit)
      end_ = std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(*limit);
  }

  bool passed() {
    if (!end_ || expired_.load(std::memory_order_relaxed)) return expired_;
    if (++ticks_ % 256 != 0) return false;
    if (std::chrono::steady_clock::now() >= *end_) expired_ = true;
    return expired_;
  }

  bool expired() const noexcept { return expired_; }

private:
  std::optional<std::chrono::steady_clock::time_point> end_;
  std::atomic<bool> expired_{false};
  std::atomic<std::uint64_t> ticks_{0};
};

/// Largest partial routing seen so far; used when the deadline hits.
class best_partial {
public:
  void offer(const std::vector<std::size_t>& pairs, const std::vector<path>& paths, std::size_t depth) {
    std::lock_guard lock(mutex_);
    if (depth <= best_.size()) return;
    best_.routed.clear();
    for (std::size_t i = 0; i < depth; ++i) best_.routed.push_back({pairs[i], paths[i]});
  }
  std::size_t size() {
    std::lock_guard lock(mutex_);
    return best_.size();
  }
  solution take() {
    std::lock_guard lock(mutex_);
    return best_;
  }

private:
  std::mutex mutex_;
  solution best_;
};

/// Routes one fixed, ordered subset of pairs by backtracking. Failed
/// (depth, residual) states are memoised; the first success in path order
/// is the answer, so the memo never changes which routing is returned.
class subset_router {
public:
  subset_router(const bit_graph& g, const instance& inst, disjointness mode, const solve_budget& budget,
                deadline& clock, best_partial& best)
      : g_(g),
        inst_(inst),
        mode_(mode),
        paths_(g, mode, budget.max_path_nodes),
        clock_(clock),
        best_(best),
        track_best_(budget.time_limit.has_value()) {}

  std::optional<solution> route(const std::vector<std::size_t>& pairs) {
    pairs_ = pairs;
    chosen_.assign(pairs.size(), {});
    failed_.assign(pairs.size(), {});
    if (!step(0, g_.all())) return std::nullopt;
    solution sol;
    for (std::size_t i = 0; i < pairs.size(); ++i) sol.routed.push_back({pairs[i], chosen_[i]});
    return sol;
  }

  bool truncated() const noexcept { return paths_.truncated(); }

private:
  bool step(std::size_t depth, mask alive) {
    if (depth == pairs_.size()) return true;
    if (clock_.passed()) return false;
    if (failed_[depth].contains(alive)) return false;
    const terminal_pair& tp = inst_.pairs()[pairs_[depth]];
    bool found = paths_.run(alive, tp.source, tp.sink, [&](const path& p, mask on_path) {
      if (clock_.passed()) return true;
      chosen_[depth] = p;
      if (track_best_) best_.offer(pairs_, chosen_, depth + 1);
      mask removed = on_path;
      if (mode_ == disjointness::induced)
        for (node_id v : p) removed |= g_.nbr[v];
      return step(depth + 1, alive & ~removed);
    });
    if (clock_.expired()) return false;
    if (!found) failed_[depth].insert(alive);
    return found;
  }

  const bit_graph& g_;
  const instance& inst_;
  disjointness mode_;
  path_enumerator paths_;
  deadline& clock_;
  best_partial& best_;
  bool track_best_;
  std::vector<std::size_t> pairs_;
  std::vector<path> chosen_;
  std::vector<std::unordered_set<mask>> failed_;
};

/// Lexicographic k-combinations of an index list.
class combinations {
public:
  combinations(std::size_t n, std::size_t k) : n_(n), idx_(k) {
    for (std::size_t i = 0; i < k; ++i) idx_[i] = i;
    done_ = k > n;
  }

  /// Writes the next combination into `out`; false when exhausted.
  bool next(std::vector<std::size_t>& out) {
    if (done_) return false;
    out = idx_;
    std::size_t k = idx_.size();
    std::size_t i = k;
    while (i > 0 && idx_[i - 1] == n_ - k + i - 1) --i;
    if (i == 0) {
      done_ = true;
    } else {
      ++idx_[i - 1];
      for (std::size_t j = i; j < k; ++j) idx_[j] = idx_[j - 1] + 1;
    }
    return true;
  }

private:
  std::size_t n_;
  std::vector<std::size_t> idx_;
  bool done_ = false;
};

inline exact_result exact_disjoint_paths(const instance& inst, const solve_budget& budget, disjointness mode,
                                         const char* what) {
  check_exact_budget(inst.host(), budget, what);
  const bit_graph g(inst.host());
  deadline clock(budget.time_limit);
  best_partial best;
  bool truncated = false;

  // Pairs that cannot be routed even alone never belong to a feasible subset.
  std::vector<std::size_t> routable;
  {
    path_enumerator probe(g, mode, budget.max_path_nodes);
    for (std::size_t i = 0; i < inst.pair_count(); ++i) {
      const auto& tp = inst.pairs()[i];
      if (probe.run(g.all(), tp.source, tp.sink, [](const path&, mask) { return true; })) routable.push_back(i);
    }
    truncated = probe.truncated();
  }

  // Terminals of two routed pairs must be distinct and, for induced paths,
  // non-adjacent.
  auto terminals_compatible = [&](const std::vector<std::size_t>& pairs) {
    mask seen = 0, near = 0;
    for (std::size_t p : pairs) {
      const auto& tp = inst.pairs()[p];
      mask here = bit(tp.source) | bit(tp.sink);
      if ((seen & here) || (near & here)) return false;
      seen |= here;
      if (mode == disjointness::induced) near |= g.nbr[tp.source] | g.nbr[tp.sink];
    }
    return true;
  };

  const unsigned jobs = std::max(1u, budget.jobs);
  for (std::size_t size = routable.size(); size > 0; --size) {
    combinations combos(routable.size(), size);
    std::mutex gen_mutex;
    std::uint64_t next_rank = 0;
    std::atomic<std::uint64_t> winner_rank{std::numeric_limits<std::uint64_t>::max()};
    std::optional<solution> winner;
    std::atomic<bool> any_truncated{false};

    auto worker = [&] {
      subset_router router(g, inst, mode, budget, clock, best);
      std::vector<std::size_t> idx, pairs;
      for (;;) {
        std::uint64_t rank;
        {
          std::lock_guard lock(gen_mutex);
          if (next_rank > winner_rank.load() || !combos.next(idx)) break;
          rank = next_rank++;
        }
        if (clock.expired()) break;
        pairs.clear();
        for (std::size_t i : idx) pairs.push_back(routable[i]);
        if (!terminals_compatible(pairs)) continue;
        auto sol = router.route(pairs);
        if (!sol || clock.expired()) continue;
        std::lock_guard lock(gen_mutex);
        if (rank < winner_rank.load()) {
          winner_rank = rank;
          winner = std::move(sol);
        }
      }
      if (router.truncated()) any_truncated = true;
    };

    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    truncated = truncated || any_truncated;

    if (clock.expired()) break;
    if (winner) return {std::move(*winner), truncated ? solve_status::path_limited : solve_status::optimal};
  }

  if (clock.expired()) return {best.take(), solve_status::time_limited};
  return {solution{}, truncated ? solve_status::path_limited : solve_status::optimal};
}

inline int independence_number(const bit_graph& g, mask candidates) {
  if (!candidates) return 0;
  // Nodes of degree <= 1 inside the candidates are always safe to take.
  node_id pick = 0;
  int pick_degree = -1;
  for (mask c = candidates; c; c &= c - 1) {
    node_id v = static_cast<node_id>(std::countr_zero(c));
    int d = std::popcount(g.nbr[v] & candidates);
    if (d <= 1) return 1 + independence_number(g, candidates & ~(bit(v) | g.nbr[v]));
    if (d > pick_degree) {
      pick_degree = d;
      pick = v;
    }
  }
  return std::max(1 + independence_number(g, candidates & ~(bit(pick) | g.nbr[pick])),
                  independence_number(g, candidates & ~bit(pick)));
}

}  // namespace detail

/// Maximum independent set; among all maximum sets, the lexicographically
/// smallest sorted node list.
inline std::vector<node_id> exact_max_independent_set(const graph& g, const solve_budget& budget = {}) {
  detail::check_exact_budget(g, budget, "exact_max_independent_set");
  const detail::bit_graph bg(g);
  detail::mask candidates = bg.all();
  int need = detail::independence_number(bg, candidates);

  std::vector<node_id> out;
  for (node_id v = 0; v < g.node_count() && need > 0; ++v) {
    if (!(candidates & detail::bit(v))) continue;
    // Every node below v has already been taken or dropped from candidates.
    detail::mask after = candidates & ~(detail::bit(v) | bg.nbr[v]);
    if (1 + detail::independence_number(bg, after) >= need) {
      out.push_back(v);
      candidates = after;
      --need;
    } else {
      candidates &= ~detail::bit(v);
    }
  }
  return out;
}

/// Maximum number of pairs connected by induced disjoint paths.
///
/// Target sizes are tried from the number of individually routable pairs
/// downward. For each size, subsets are tried in lexicographic order; within
/// a subset the pairs are routed in order, each along a chordless path of the
/// residual graph left after deleting the closed neighbourhoods of the
/// earlier paths. Paths are tried by length, then lexicographically. The
/// first routable subset is returned, so the output is fully deterministic
/// regardless of budget.jobs.
inline exact_result exact_idpp(const idpp_instance& inst, const solve_budget& budget = {}) {
  return detail::exact_disjoint_paths(inst, budget, detail::disjointness::induced, "exact_idpp");
}

/// Same search as exact_idpp with simple paths and node-disjointness only.
inline exact_result exact_dpp(const dpp_instance& inst, const solve_budget& budget = {}) {
  return detail::exact_disjoint_paths(inst, budget, detail::disjointness::node, "exact_dpp");
}

enum class greedy_rule {
  /// Route the path with the fewest edges incident to its nodes in the
  /// residual graph; ties by hop count, then pair index.
  min_edge_cost,
  /// Route the path with the fewest hops; ties by pair index.
  shortest_path,
};

/// Greedy IDPP: repeatedly route the best remaining pair in the residual
/// graph and delete the closed neighbourhood of its path. Both rules pick
/// chordless paths, so the result is always feasible.
///
/// Under min_edge_cost, a chosen path P blocks at most c(P) paths of any
/// optimum (c = residual edges incident to P) and c(P) is at most the cost of
/// every surviving optimum path, which bounds the ratio by sqrt(m).
/// shortest_path has no such bound; a star shows it can be off by n'-1.
inline idpp_solution greedy_idpp(const idpp_instance& inst, greedy_rule rule = greedy_rule::min_edge_cost) {
  const graph& g = inst.host();
  const std::size_t n = g.node_count();
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> degree(n);
  for (node_id v = 0; v < n; ++v) degree[v] = g.degree(v);
  std::vector<bool> routed(inst.pair_count(), false);

  using key = std::pair<std::size_t, std::size_t>;  // (primary, hops)
  constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();

  auto best_path = [&](node_id s, node_id t) -> std::optional<std::pair<key, path>> {
    std::vector<key> dist(n, key{inf, inf});
    std::vector<node_id> parent(n, n);
    using entry = std::pair<key, node_id>;
    std::priority_queue<entry, std::vector<entry>, std::greater<>> queue;
    dist[s] = rule == greedy_rule::min_edge_cost ? key{degree[s], 0} : key{0, 0};
    queue.push({dist[s], s});
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (d != dist[u]) continue;
      if (u == t) break;
      for (node_id v : g.neighbors(u)) {
        if (!alive[v]) continue;
        key nd = rule == greedy_rule::min_edge_cost ? key{d.first + degree[v] - 1, d.second + 1}
                                                    : key{d.first + 1, 0};
        if (nd < dist[v]) {
          dist[v] = nd;
          parent[v] = u;
          queue.push({nd, v});
        }
      }
    }
    if (dist[t].first == inf) return std::nullopt;
    path p;
    for (node_id v = t; v != s; v = parent[v]) p.push_back(v);
    p.push_back(s);
    std::reverse(p.begin(), p.end());
    return std::pair{dist[t], std::move(p)};
  };

  idpp_solution sol;
  for (;;) {
    std::optional<std::tuple<key, std::size_t, path>> pick;
    for (std::size_t i = 0; i < inst.pair_count(); ++i) {
      const auto& tp = inst.pairs()[i];
      if (routed[i] || !alive[tp.source] || !alive[tp.sink]) continue;
      auto found = best_path(tp.source, tp.sink);
      if (found && (!pick || found->first < std::get<0>(*pick)))
        pick.emplace(found->first, i, std::move(found->second));
    }
    if (!pick) break;

    auto& [k, pair, p] = *pick;
    routed[pair] = true;
    std::vector<node_id> doomed;
    for (node_id v : p) {
      if (alive[v]) doomed.push_back(v);
      for (node_id w : g.neighbors(v))
        if (alive[w]) doomed.push_back(w);
    }
    std::sort(doomed.begin(), doomed.end());
    doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
    for (node_id v : doomed) alive[v] = false;
    for (node_id v : doomed)
      for (node_id w : g.neighbors(v))
        if (alive[w]) --degree[w];
    sol.routed.push_back({pair, std::move(p)});
  }
  std::sort(sol.routed.begin(), sol.routed.end(),
            [](const routing& a, const routing& b) { return a.pair < b.pair; });
  return sol;
}

/// Parameters of the ratio-boosting dispatcher for a given epsilon.
struct boost_params {
  double epsilon = 0.5;
  /// ceil(3^(1 + 1/epsilon)); saturates at uint64 max.
  std::uint64_t threshold = 27;
  double epsilon_prime = 0.25;
};

/// Values within a relative 1e-12 of an integer snap to it before the
/// ceiling, so 3^(1+1/0.5) gives 27 despite rounding noise.
inline boost_params boost_threshold(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  const long double exponent = 1.0L + 1.0L / static_cast<long double>(epsilon);
  const long double raw = std::pow(3.0L, exponent);
  std::uint64_t threshold;
  if (!(raw < 18446744073709551615.0L)) {
    threshold = std::numeric_limits<std::uint64_t>::max();
  } else {
    long double nearest = std::nearbyint(raw);
    long double value = std::fabs(raw - nearest) <= 1e-12L * raw ? nearest : std::ceil(raw);
    threshold = static_cast<std::uint64_t>(value);
  }
  return {epsilon, threshold, epsilon * epsilon};
}

enum class boost_case {
  brute_force,  // n below the threshold
  base,         // n at or above the threshold
};

struct boosted_result {
  solution sol;
  boost_case which = boost_case::brute_force;
  solve_status status = solve_status::optimal;
};

/// Below the threshold the instance is solved exactly; at or above it,
/// `base` is called. Refuses with budget_error when the brute-force region
/// (all n < threshold) is not covered by budget.max_nodes_exact.
template <typename Base>
boosted_result boosted_solve(const idpp_instance& inst, const boost_params& params, Base&& base,
                             const solve_budget& budget = {}) {
  const std::uint64_t n = inst.host().node_count();
  if (n >= params.threshold) return {std::forward<Base>(base)(inst), boost_case::base, solve_status::heuristic};
  const std::uint64_t largest_exact_n = params.threshold - 1;
  const std::uint64_t covered = std::min<std::uint64_t>(budget.max_nodes_exact, exact_node_limit);
  if (largest_exact_n > covered)
    throw budget_error("brute-force region too large for budget: epsilon " + std::to_string(params.epsilon) +
                       " gives threshold 3^(1+1/epsilon) = " + std::to_string(params.threshold) +
                       ", so instances up to " + std::to_string(largest_exact_n) +
                       " nodes need exact solving but the budget allows " + std::to_string(covered));
  auto exact = exact_idpp(inst, budget);
  return {std::move(exact.sol), boost_case::brute_force, exact.status};
}

struct lemma1_sides {
  long double lhs = 0;  // (n/3)^(1 - eps^2)
  long double rhs = 0;  // n^(1 - eps)
};

inline lemma1_sides evaluate_lemma1(std::uint64_t n, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const long double e = epsilon;
  const long double x = static_cast<long double>(n);
  return {std::pow(x / 3.0L, 1.0L - e * e), std::pow(x, 1.0L - e)};
}

/// (n/3)^(1-eps^2) >= n^(1-eps), evaluated in long double. A shortfall
/// within a relative 1e-12 counts as equality, since the two sides meet
/// exactly at n = 3^(1+1/eps).
inline bool check_lemma1_inequality(std::uint64_t n, double epsilon) {
  auto [lhs, rhs] = evaluate_lemma1(n, epsilon);
  return lhs >= rhs || (rhs - lhs) <= 1e-12L * std::max(lhs, rhs);
}

}  // namespace idpp
