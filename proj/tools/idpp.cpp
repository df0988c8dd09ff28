#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "idpp/commands.hpp"

int main(int argc, char** argv) {
  using namespace idpp;

  CLI::App app{"Induced disjoint paths toolkit: reductions, solvers, verifier, benchmarks"};
  app.require_subcommand(1);

  std::size_t budget_nodes = solve_budget{}.max_nodes_exact;
  std::optional<double> time_limit;
  unsigned jobs = 1;
  auto add_budget_flags = [&](CLI::App* cmd) {
    cmd->add_option("--budget-nodes", budget_nodes, "Largest graph the exact solvers accept")
        ->check(CLI::Range(std::size_t{1}, exact_node_limit));
    cmd->add_option("--time-limit", time_limit, "Seconds before an exact solve returns its best routing")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", jobs, "Worker threads for exact search")->check(CLI::Range(1u, 256u));
  };
  auto budget = [&] {
    solve_budget b;
    b.max_nodes_exact = budget_nodes;
    if (time_limit) b.time_limit = std::chrono::duration<double>(*time_limit);
    b.jobs = jobs;
    return b;
  };

  cli::reduce_options reduce;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce an independent-set graph or a DPP instance to IDPP");
  reduce_cmd->add_option("kind", reduce.kind, "is2idpp or dpp2idpp")
      ->required()
      ->check(CLI::IsMember({"is2idpp", "dpp2idpp"}));
  reduce_cmd->add_option("input", reduce.input, "Graph file (is2idpp) or instance file (dpp2idpp)")->required();
  reduce_cmd->add_option("--out", reduce.output, "Reduced instance file")->required();
  reduce_cmd->add_option("--map", reduce.map_output, "Reduction map file (default: <out>.map)");

  cli::solve_options solve;
  std::string solution_out;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an IDPP instance");
  solve_cmd->add_option("algo", solve.algo, "exact, greedy or boosted")
      ->required()
      ->check(CLI::IsMember({"exact", "greedy", "boosted"}));
  solve_cmd->add_option("instance", solve.instance, "Instance file")->required();
  solve_cmd->add_option("--epsilon", solve.epsilon, "Epsilon of the boosted dispatcher")->check(CLI::Range(0.0, 1.0));
  solve_cmd->add_option("--out", solution_out, "Write the solution to this file");
  solve_cmd->add_flag("--timing", solve.timing, "Include wall time in the report");
  add_budget_flags(solve_cmd);

  std::string verify_instance, verify_solution;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution against an instance");
  verify_cmd->add_option("instance", verify_instance, "Instance file")->required();
  verify_cmd->add_option("solution", verify_solution, "Solution file")->required();

  bench_options bench;
  std::string family, bench_out, rule = "min-edge-cost";
  auto* bench_cmd = app.add_subcommand("bench", "Exact vs greedy on reduced random graphs, as CSV");
  bench_cmd->add_option("family", family, "gnp or sparse")->required()->check(CLI::IsMember({"gnp", "sparse"}));
  bench_cmd->add_option("--nodes", bench.nodes, "Nodes of the random independent-set graph")->required();
  bench_cmd->add_option("--p", bench.p, "Edge probability (gnp)");
  bench_cmd->add_option("--alpha", bench.alpha, "m = round(n^alpha) (sparse)");
  bench_cmd->add_option("--seed", bench.seed, "Generator seed")->required();
  bench_cmd->add_option("--trials", bench.trials, "Number of random graphs")->required();
  bench_cmd->add_option("--greedy-rule", rule, "min-edge-cost or shortest-path")
      ->check(CLI::IsMember({"min-edge-cost", "shortest-path"}));
  bench_cmd->add_option("--out", bench_out, "Write the CSV here instead of stdout");
  add_budget_flags(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_parse;
  }

  if (*reduce_cmd) return cli::cmd_reduce(reduce, std::cout, std::cerr);
  if (*solve_cmd) {
    solve.budget = budget();
    if (!solution_out.empty()) solve.solution_output = solution_out;
    return cli::cmd_solve(solve, std::cout, std::cerr);
  }
  if (*verify_cmd) return cli::cmd_verify(verify_instance, verify_solution, std::cout, std::cerr);

  bench.family = family == "gnp" ? bench_family::gnp : bench_family::sparse;
  bench.rule = rule == "shortest-path" ? greedy_rule::shortest_path : greedy_rule::min_edge_cost;
  bench.budget = budget();
  if (bench_out.empty()) return cli::cmd_bench(bench, std::cout, std::cerr);
  std::ostringstream csv;
  int code = cli::cmd_bench(bench, csv, std::cerr);
  try {
    cli::detail::write_file(bench_out, csv.str());
  } catch (const cli::io_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return cli::exit_io;
  }
  return code;
}
