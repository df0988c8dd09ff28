#pragma once

// Line-oriented text formats.
//
//   graph     g <node_count> <edge_count>
//             e <u> <v>                       (edge_count lines, u < v on output)
//   instance  graph lines followed by  t <source> <sink>  per pair
//   solution  r <pair_index> <v0> <v1> ... <vL>  per routed pair
//   verdict   feasible <0|1>  then one line per violation
//   map       map is2idpp <n'>   + map a <v> <a_v> <b_v>    per original node
//             map dpp2idpp <n>   + map x <u> <v> <mid>      per original edge
//
// Lines starting with '#' and blank lines are ignored on input.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idpp/graph.hpp"
#include "idpp/reductions.hpp"
#include "idpp/verify.hpp"

namespace idpp {

class parse_error : public std::runtime_error {
public:
  parse_error(std::size_t line, const std::string& message, const std::string& source = "")
      : std::runtime_error((source.empty() ? "" : source + ":") + "line " + std::to_string(line) + ": " + message),
        line_(line),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

private:
  std::size_t line_;
  std::string message_;
};

namespace detail {

struct text_line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

/// Non-blank, non-comment lines split on whitespace. Views point into
/// `storage`.
inline std::vector<text_line> split_lines(std::istream& in, std::vector<std::string>& storage) {
  storage.clear();
  std::vector<std::size_t> numbers;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    storage.push_back(std::move(line));
    numbers.push_back(number);
  }
  std::vector<text_line> out;
  for (std::size_t i = 0; i < storage.size(); ++i) {
    text_line tl{numbers[i], {}};
    std::string_view rest = storage[i];
    while (!rest.empty()) {
      auto b = rest.find_first_not_of(" \t");
      if (b == std::string_view::npos) break;
      rest.remove_prefix(b);
      auto e = rest.find_first_of(" \t");
      tl.tokens.push_back(rest.substr(0, e));
      rest = e == std::string_view::npos ? std::string_view{} : rest.substr(e);
    }
    out.push_back(std::move(tl));
  }
  return out;
}

inline std::size_t to_number(const text_line& line, std::size_t index) {
  if (index >= line.tokens.size()) throw parse_error(line.number, "missing field " + std::to_string(index));
  std::string_view tok = line.tokens[index];
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw parse_error(line.number, "expected a non-negative integer, got '" + std::string(tok) + "'");
  return value;
}

inline void expect_fields(const text_line& line, std::size_t count) {
  if (line.tokens.size() != count)
    throw parse_error(line.number, "expected " + std::to_string(count) + " fields, got " +
                                       std::to_string(line.tokens.size()));
}

inline instance parse_instance_lines(const std::vector<text_line>& lines, bool allow_pairs) {
  if (lines.empty()) throw parse_error(0, "empty input, expected 'g <node_count> <edge_count>'");
  const text_line& header = lines.front();
  if (header.tokens.front() != "g") throw parse_error(header.number, "expected header 'g <node_count> <edge_count>'");
  expect_fields(header, 3);
  const std::size_t n = to_number(header, 1);
  const std::size_t m = to_number(header, 2);

  std::vector<edge> edges;
  std::set<edge> seen;
  std::vector<terminal_pair> pairs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const text_line& line = lines[i];
    std::string_view tag = line.tokens.front();
    if (tag == "e") {
      expect_fields(line, 3);
      edges.emplace_back(to_number(line, 1), to_number(line, 2));
      // Validate as we go so the diagnostic names the offending line.
      auto [u, v] = edges.back();
      if (u >= n || v >= n) throw parse_error(line.number, "edge endpoint out of range");
      if (u == v) throw parse_error(line.number, "self-loop");
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw parse_error(line.number, "duplicate edge");
    } else if (tag == "t" && allow_pairs) {
      expect_fields(line, 3);
      terminal_pair tp{to_number(line, 1), to_number(line, 2)};
      if (tp.source >= n || tp.sink >= n) throw parse_error(line.number, "terminal out of range");
      if (tp.source == tp.sink) throw parse_error(line.number, "source equals sink");
      pairs.push_back(tp);
    } else {
      throw parse_error(line.number, "unexpected record '" + std::string(tag) + "'");
    }
  }
  if (edges.size() != m)
    throw parse_error(header.number, "header announces " + std::to_string(m) + " edges, found " +
                                         std::to_string(edges.size()));
  try {
    return instance(graph(n, edges), std::move(pairs));
  } catch (const graph_error& e) {
    throw parse_error(header.number, e.what());
  }
}

}  // namespace detail

inline void write_graph(std::ostream& out, const graph& g) {
  out << "g " << g.node_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
}

inline void write_instance(std::ostream& out, const instance& inst) {
  write_graph(out, inst.host());
  for (const auto& tp : inst.pairs()) out << "t " << tp.source << ' ' << tp.sink << '\n';
}

inline void write_solution(std::ostream& out, const solution& sol) {
  for (const auto& [pair, nodes] : sol.routed) {
    out << "r " << pair;
    for (node_id v : nodes) out << ' ' << v;
    out << '\n';
  }
}

inline void write_verdict(std::ostream& out, const verdict& v) {
  out << "feasible " << (v.feasible ? 1 : 0) << '\n';
  for (const auto& x : v.violations) out << x.describe() << '\n';
}

inline void write_map(std::ostream& out, const reduction_map& map) {
  if (map.kind == reduction_kind::is_to_idpp) {
    out << "map is2idpp " << map.original_node_count << '\n';
    for (const auto& gd : map.gadgets) out << "map a " << gd.original << ' ' << gd.a << ' ' << gd.b << '\n';
  } else {
    out << "map dpp2idpp " << map.original_node_count << '\n';
    for (const auto& m : map.midpoints) out << "map x " << m.u << ' ' << m.v << ' ' << m.mid << '\n';
  }
}

/// Graph file; pair records are rejected.
inline graph parse_graph(std::istream& in) {
  std::vector<std::string> storage;
  return detail::parse_instance_lines(detail::split_lines(in, storage), false).host();
}

inline instance parse_instance(std::istream& in) {
  std::vector<std::string> storage;
  return detail::parse_instance_lines(detail::split_lines(in, storage), true);
}

inline solution parse_solution(std::istream& in) {
  std::vector<std::string> storage;
  solution sol;
  for (const auto& line : detail::split_lines(in, storage)) {
    if (line.tokens.front() != "r") throw parse_error(line.number, "expected 'r <pair_index> <nodes...>'");
    routing r{detail::to_number(line, 1), {}};
    for (std::size_t i = 2; i < line.tokens.size(); ++i) r.nodes.push_back(detail::to_number(line, i));
    sol.routed.push_back(std::move(r));
  }
  return sol;
}

inline reduction_map parse_map(std::istream& in) {
  std::vector<std::string> storage;
  auto lines = detail::split_lines(in, storage);
  if (lines.empty()) throw parse_error(0, "empty map file");
  const auto& header = lines.front();
  detail::expect_fields(header, 3);
  if (header.tokens[0] != "map") throw parse_error(header.number, "expected 'map <kind> <node_count>'");

  reduction_map map;
  map.original_node_count = detail::to_number(header, 2);
  const std::size_t n = map.original_node_count;
  if (header.tokens[1] == "is2idpp") {
    map.kind = reduction_kind::is_to_idpp;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto& line = lines[i];
      detail::expect_fields(line, 5);
      if (line.tokens[0] != "map" || line.tokens[1] != "a") throw parse_error(line.number, "expected 'map a ...'");
      gadget gd{detail::to_number(line, 2), detail::to_number(line, 3), detail::to_number(line, 4)};
      if (gd.original != map.gadgets.size() || gd.a != n + 2 * gd.original || gd.b != gd.a + 1)
        throw parse_error(line.number, "gadget ids do not follow the a_v = n'+2v, b_v = n'+2v+1 layout");
      map.gadgets.push_back(gd);
    }
    if (map.gadgets.size() != n)
      throw parse_error(header.number, "expected " + std::to_string(n) + " gadget lines");
  } else if (header.tokens[1] == "dpp2idpp") {
    map.kind = reduction_kind::dpp_to_idpp;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto& line = lines[i];
      detail::expect_fields(line, 5);
      if (line.tokens[0] != "map" || line.tokens[1] != "x") throw parse_error(line.number, "expected 'map x ...'");
      midpoint m{detail::to_number(line, 2), detail::to_number(line, 3), detail::to_number(line, 4)};
      if (m.u >= m.v || m.v >= n || m.mid != n + map.midpoints.size())
        throw parse_error(line.number, "midpoint record out of order or out of range");
      if (!map.midpoints.empty() && edge{map.midpoints.back().u, map.midpoints.back().v} >= edge{m.u, m.v})
        throw parse_error(line.number, "midpoint edges must be strictly increasing");
      map.midpoints.push_back(m);
    }
  } else {
    throw parse_error(header.number, "unknown map kind '" + std::string(header.tokens[1]) + "'");
  }
  return map;
}

template <typename T, typename Writer>
std::string to_text(const T& value, Writer write) {
  std::ostringstream out;
  write(out, value);
  return out.str();
}

inline std::string to_text(const graph& g) { return to_text(g, [](std::ostream& o, const graph& x) { write_graph(o, x); }); }
inline std::string to_text(const instance& i) {
  return to_text(i, [](std::ostream& o, const instance& x) { write_instance(o, x); });
}
inline std::string to_text(const solution& s) {
  return to_text(s, [](std::ostream& o, const solution& x) { write_solution(o, x); });
}
inline std::string to_text(const verdict& v) {
  return to_text(v, [](std::ostream& o, const verdict& x) { write_verdict(o, x); });
}
inline std::string to_text(const reduction_map& m) {
  return to_text(m, [](std::ostream& o, const reduction_map& x) { write_map(o, x); });
}

}  // namespace idpp
