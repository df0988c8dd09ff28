#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "idpp/graph.hpp"
#include "idpp/reductions.hpp"
#include "idpp/solvers.hpp"

namespace idpp {

/// Erdos-Renyi G(n, p).
template <typename Rng>
graph random_gnp(std::size_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  std::bernoulli_distribution coin(p);
  std::vector<edge> edges;
  for (node_id u = 0; u < n; ++u)
    for (node_id v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return graph(n, edges);
}

/// Edge count of the sparse family: round(n^alpha), capped at n(n-1)/2.
inline std::size_t sparse_edge_count(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in (0, 2)");
  const std::size_t cap = n * (n - (n > 0 ? 1 : 0)) / 2;
  const double target = std::round(std::pow(static_cast<double>(n), alpha));
  return std::min(cap, static_cast<std::size_t>(target));
}

/// Uniform graph with exactly sparse_edge_count(n, alpha) edges.
template <typename Rng>
graph random_sparse(std::size_t n, double alpha, Rng& rng) {
  const std::size_t m = sparse_edge_count(n, alpha);
  std::vector<edge> all;
  for (node_id u = 0; u < n; ++u)
    for (node_id v = u + 1; v < n; ++v) all.emplace_back(u, v);
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(m);
  return graph(n, all);
}

enum class bench_family { gnp, sparse };

struct bench_options {
  bench_family family = bench_family::gnp;
  std::size_t nodes = 6;  // n' of the independent-set graph
  double p = 0.3;         // gnp
  double alpha = 1.2;     // sparse
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  solve_budget budget{};
  greedy_rule rule = greedy_rule::min_edge_cost;
};

/// One trial: a random graph G' reduced to IDPP, solved both ways.
struct bench_row {
  std::size_t trial = 0;
  std::size_t n_prime = 0, m_prime = 0;
  std::size_t n = 0, m = 0, k = 0;
  std::optional<std::size_t> exact;  // absent when outside the exact budget
  std::size_t greedy = 0;

  /// exact / greedy <= sqrt(m), in integers. Vacuous without an exact value.
  bool within_sqrt_m() const {
    if (!exact) return true;
    return *exact * *exact <= m * greedy * greedy;
  }
};

inline std::vector<bench_row> run_bench(const bench_options& opt) {
  std::mt19937_64 rng(opt.seed);
  std::vector<bench_row> rows;
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    graph g = opt.family == bench_family::gnp ? random_gnp(opt.nodes, opt.p, rng)
                                              : random_sparse(opt.nodes, opt.alpha, rng);
    auto [inst, map] = is_to_idpp(g);
    bench_row row{trial, g.node_count(), g.edge_count(), inst.host().node_count(), inst.host().edge_count(),
                  inst.pair_count(), std::nullopt, 0};
    row.greedy = greedy_idpp(inst, opt.rule).size();
    if (inst.host().node_count() <= std::min(opt.budget.max_nodes_exact, exact_node_limit)) {
      auto res = exact_idpp(inst, opt.budget);
      if (res.optimal()) row.exact = res.sol.size();
    }
    rows.push_back(row);
  }
  return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<bench_row>& rows) {
  out << "trial,n_prime,m_prime,n,m,k,exact,greedy,ratio,sqrt_m,ratio_within_sqrt_m,sqrt_m_lt_n\n";
  auto fixed = [](double x) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(6) << x;
    return s.str();
  };
  for (const auto& r : rows) {
    out << r.trial << ',' << r.n_prime << ',' << r.m_prime << ',' << r.n << ',' << r.m << ',' << r.k << ',';
    if (r.exact) {
      double ratio = r.greedy == 0 ? 1.0 : static_cast<double>(*r.exact) / static_cast<double>(r.greedy);
      out << *r.exact << ',' << r.greedy << ',' << fixed(ratio);
    } else {
      out << ',' << r.greedy << ',';
    }
    out << ',' << fixed(std::sqrt(static_cast<double>(r.m))) << ',';
    if (r.exact) out << (r.within_sqrt_m() ? 1 : 0);
    out << ',' << (r.m < r.n * r.n ? 1 : 0) << '\n';
  }
}

}  // namespace idpp
