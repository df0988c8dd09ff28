#pragma once

// Command implementations behind the `idpp` executable. Each returns the
// process exit code and writes only to the streams it is given, so the
// commands can be driven in-process.

#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "idpp/bench.hpp"
#include "idpp/graph.hpp"
#include "idpp/reductions.hpp"
#include "idpp/solvers.hpp"
#include "idpp/text_format.hpp"
#include "idpp/verify.hpp"

namespace idpp::cli {

enum exit_code : int {
  exit_ok = 0,
  exit_infeasible = 1,
  exit_parse = 2,
  exit_io = 3,
  exit_budget = 4,
};

class io_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out.flush()) throw io_error("write to '" + path + "' failed");
}

template <typename T, typename Parse>
T parse_file(const std::string& path, Parse parse) {
  std::istringstream in(read_file(path));
  try {
    return parse(in);
  } catch (const parse_error& e) {
    throw parse_error(e.line(), e.message(), path);
  }
}

/// Maps the library's exception vocabulary onto exit codes.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_parse;
  } catch (const io_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return exit_io;
  } catch (const budget_error& e) {
    err << "budget refusal: " << e.what() << '\n';
    return exit_budget;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_parse;
  }
}

inline nlohmann::ordered_json solution_json(const solution& sol) {
  auto routes = nlohmann::ordered_json::array();
  for (const auto& r : sol.routed) routes.push_back({{"pair", r.pair}, {"path", r.nodes}});
  return routes;
}

}  // namespace detail

struct reduce_options {
  std::string kind;  // "is2idpp" or "dpp2idpp"
  std::string input;
  std::string output;
  std::string map_output;  // defaults to output + ".map"
};

/// Writes the reduced instance and its map; prints "n=.. m=.. k=..".
inline int cmd_reduce(const reduce_options& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    reduced<idpp_instance> r;
    if (opt.kind == "is2idpp") {
      graph g = detail::parse_file<graph>(opt.input, [](std::istream& in) { return parse_graph(in); });
      r = is_to_idpp(g);
    } else if (opt.kind == "dpp2idpp") {
      instance inst = detail::parse_file<instance>(opt.input, [](std::istream& in) { return parse_instance(in); });
      r = dpp_to_idpp(inst);
    } else {
      throw std::invalid_argument("unknown reduction '" + opt.kind + "' (expected is2idpp or dpp2idpp)");
    }
    detail::write_file(opt.output, to_text(r.result));
    detail::write_file(opt.map_output.empty() ? opt.output + ".map" : opt.map_output, to_text(r.map));
    out << "n=" << r.result.host().node_count() << " m=" << r.result.host().edge_count()
        << " k=" << r.result.pair_count() << '\n';
    return int{exit_ok};
  });
}

struct solve_options {
  std::string algo;  // "exact", "greedy" or "boosted"
  std::string instance;
  double epsilon = 0.5;
  solve_budget budget{};
  std::optional<std::string> solution_output;
  /// Adds wall_time_ms to the report; off by default so output is reproducible.
  bool timing = false;
};

/// Prints one JSON record per run. Budget refusals exit with exit_budget.
inline int cmd_solve(const solve_options& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    instance inst = detail::parse_file<instance>(opt.instance, [](std::istream& in) { return parse_instance(in); });

    nlohmann::ordered_json report;
    report["command"] = "solve";
    report["algo"] = opt.algo;
    report["n"] = inst.host().node_count();
    report["m"] = inst.host().edge_count();
    report["k"] = inst.pair_count();

    const auto start = std::chrono::steady_clock::now();
    solution sol;
    solve_status status = solve_status::heuristic;
    if (opt.algo == "exact") {
      auto res = exact_idpp(inst, opt.budget);
      sol = std::move(res.sol);
      status = res.status;
    } else if (opt.algo == "greedy") {
      sol = greedy_idpp(inst);
    } else if (opt.algo == "boosted") {
      boost_params params = boost_threshold(opt.epsilon);
      report["epsilon"] = params.epsilon;
      report["threshold"] = params.threshold;
      auto res = boosted_solve(inst, params, [](const idpp_instance& i) { return greedy_idpp(i); }, opt.budget);
      report["case"] = res.which == boost_case::brute_force ? "brute_force" : "base";
      sol = std::move(res.sol);
      status = res.status;
    } else {
      throw std::invalid_argument("unknown algorithm '" + opt.algo + "' (expected exact, greedy or boosted)");
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;

    report["size"] = sol.size();
    report["optimal"] = status == solve_status::optimal;
    report["status"] = to_string(status);
    if (opt.timing) report["wall_time_ms"] = std::chrono::duration<double, std::milli>(elapsed).count();
    report["solution"] = detail::solution_json(sol);

    if (opt.solution_output) detail::write_file(*opt.solution_output, to_text(sol));
    out << report.dump() << '\n';
    return int{exit_ok};
  });
}

/// Prints the verdict; exit_ok iff feasible.
inline int cmd_verify(const std::string& instance_path, const std::string& solution_path, std::ostream& out,
                      std::ostream& err) {
  return detail::guarded(err, [&] {
    instance inst = detail::parse_file<instance>(instance_path, [](std::istream& in) { return parse_instance(in); });
    solution sol = detail::parse_file<solution>(solution_path, [](std::istream& in) { return parse_solution(in); });
    verdict v = verify_idpp_solution(inst, sol);
    write_verdict(out, v);
    return int{v.feasible ? exit_ok : exit_infeasible};
  });
}

/// CSV to `out`. A row whose exact/greedy ratio exceeds sqrt(m) is reported
/// on `err` and turns the exit code into exit_infeasible.
inline int cmd_bench(const bench_options& opt, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (opt.family == bench_family::gnp && !(opt.p >= 0.0 && opt.p <= 1.0))
      throw std::invalid_argument("--p must lie in [0, 1]");
    if (opt.family == bench_family::sparse) sparse_edge_count(opt.nodes, opt.alpha);
    auto rows = run_bench(opt);
    write_bench_csv(out, rows);
    int code = exit_ok;
    for (const auto& r : rows)
      if (!r.within_sqrt_m()) {
        err << "ratio violation: trial " << r.trial << " exact=" << *r.exact << " greedy=" << r.greedy
            << " m=" << r.m << '\n';
        code = exit_infeasible;
      }
    return code;
  });
}

}  // namespace idpp::cli
