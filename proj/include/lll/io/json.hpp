#pragma once

// JSON encodings of graphs, run logs, explicit spaces, application states and
// instance files. Object keys come out sorted, so a value always serializes
// to the same bytes.

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lll/apps/coloring.hpp"
#include "lll/engine.hpp"
#include "lll/error.hpp"
#include "lll/graph.hpp"
#include "lll/oracles/matchings.hpp"
#include "lll/oracles/permutations.hpp"
#include "lll/oracles/spanning_trees.hpp"
#include "lll/rational.hpp"
#include "lll/synth.hpp"

namespace lll::io {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Field access with input errors instead of library exceptions.

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

inline const Json* optional_field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

inline long long as_integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<long long>();
}

inline int as_int(const Json& j, const char* what, long long lo = 0, long long hi = 1LL << 30) {
  const long long v = as_integer(j, what);
  if (v < lo || v > hi) throw InputError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

inline std::uint64_t as_u64(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::uint64_t>(j.get<long long>());
  throw InputError(std::string(what) + " must be a nonnegative integer");
}

inline const Json& as_array(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  return j;
}

/// Probability given as "a/b", a decimal string, or a JSON number (read from
/// its shortest decimal text, so 0.1 means 1/10).
inline Rational parse_probability(const Json& j) {
  Rational r;
  if (j.is_string()) {
    r = parse_rational(j.get<std::string>());
  } else if (j.is_number()) {
    r = parse_rational(j.dump());
  } else {
    throw InputError("probability must be a string or a number");
  }
  if (r < 0 || r > 1) throw InputError("probability outside [0, 1]");
  return r;
}

inline std::vector<Rational> parse_probabilities(const Json& j, const char* what) {
  std::vector<Rational> out;
  for (const auto& v : as_array(j, what)) out.push_back(parse_probability(v));
  return out;
}

/// Finite doubles as numbers, everything else as null.
inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

// ---------------------------------------------------------------------------
// Graphs and logs.

inline Json to_json(const DependencyGraph& g) {
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back({a, b});
  return {{"n", g.n()}, {"edges", edges}};
}

inline DependencyGraph graph_from_json(const Json& j) {
  const int n = as_int(field(j, "n"), "graph n", 0, 1 << 24);
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : as_array(field(j, "edges"), "graph edges")) {
    if (!e.is_array() || e.size() != 2) throw InputError("graph edge must be a pair");
    const int a = as_int(e[0], "edge endpoint", 0, n - 1);
    const int b = as_int(e[1], "edge endpoint", 0, n - 1);
    if (a == b) throw InputError("graph edge is a loop");
    edges.emplace_back(a, b);
  }
  return DependencyGraph(n, edges);
}

inline Json to_json(const RunLog& log) {
  return {{"seed", log.seed}, {"iterations", log.iterations}, {"total_resamples", log.total_resamples}, {"terminated", log.terminated}};
}

inline RunLog runlog_from_json(const Json& j) {
  RunLog log;
  log.seed = as_u64(field(j, "seed"), "seed");
  for (const auto& it : as_array(field(j, "iterations"), "iterations")) {
    std::vector<int> row;
    for (const auto& v : as_array(it, "iteration")) row.push_back(as_int(v, "event index"));
    log.iterations.push_back(std::move(row));
  }
  log.total_resamples = as_u64(field(j, "total_resamples"), "total_resamples");
  const auto& term = field(j, "terminated");
  if (!term.is_boolean()) throw InputError("terminated must be a boolean");
  log.terminated = term.get<bool>();
  return log;
}

// ---------------------------------------------------------------------------
// Explicit spaces and synthesized kernels.

inline Json to_json(const ExplicitSpace& sp) {
  Json prob = Json::array();
  for (const auto& p : sp.prob()) prob.push_back(to_string(p));
  return {{"states", sp.num_states()}, {"prob", prob}, {"events", sp.events()}, {"graph", to_json(sp.graph())}};
}

inline ExplicitSpace explicit_space_from_json(const Json& j) {
  const int k = as_int(field(j, "states"), "states", 1, kExplicitStateCap);
  auto prob = parse_probabilities(field(j, "prob"), "prob");
  if (static_cast<int>(prob.size()) != k) throw InputError("prob must list one value per state");
  std::vector<std::vector<int>> events;
  for (const auto& e : as_array(field(j, "events"), "events")) {
    std::vector<int> states;
    for (const auto& s : as_array(e, "event")) states.push_back(as_int(s, "state index", 0, k - 1));
    events.push_back(std::move(states));
  }
  return ExplicitSpace(std::move(prob), std::move(events), graph_from_json(field(j, "graph")));
}

/// Rows of the kernel for the states of E_i, as full rational rows.
inline Json to_json(const ExplicitSpace& sp, const SynthesizedOracle& o) {
  Json rows = Json::array();
  for (int u : sp.event(o.event)) {
    std::vector<std::string> row(static_cast<std::size_t>(sp.num_states()), "0");
    for (const auto& [w, m] : o.rows[static_cast<std::size_t>(u)]) row[static_cast<std::size_t>(w)] = to_string(m);
    rows.push_back(row);
  }
  return {{"event", o.event}, {"states", sp.event(o.event)}, {"matrix", rows}};
}

// ---------------------------------------------------------------------------
// States.

inline Json permutation_json(const Permutation& pi) { return Json(pi); }

inline Json matching_json(const Matching& m) {
  Json out = Json::array();
  for (auto [a, b] : matching_edges(m)) out.push_back({a, b});
  return out;
}

inline Json edges_json(const EdgeList& edges) {
  Json out = Json::array();
  for (auto [a, b] : edges) out.push_back({a, b});
  return out;
}

inline Json tree_json(const SpanningTree& t) { return edges_json(t.sorted_edges()); }

// ---------------------------------------------------------------------------
// Colorings.

inline ColorMatrix color_matrix_from_json(const Json& j) {
  const auto& rows = as_array(j, "matrix");
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw InputError("matrix must have a row");
  ColorMatrix a(n);
  for (int r = 0; r < n; ++r) {
    const auto& row = as_array(rows[static_cast<std::size_t>(r)], "matrix row");
    if (static_cast<int>(row.size()) != n) throw InputError("matrix must be square");
    for (int c = 0; c < n; ++c) a.set(r, c, as_int(row[static_cast<std::size_t>(c)], "color"));
  }
  return a;
}

inline Json to_json(const ColorMatrix& a) {
  Json rows = Json::array();
  for (int r = 0; r < a.n(); ++r) {
    std::vector<int> row;
    for (int c = 0; c < a.n(); ++c) row.push_back(a.at(r, c));
    rows.push_back(row);
  }
  return rows;
}

/// Symmetric n x n matrix; diagonal entries are ignored.
inline ColoredCompleteGraph coloring_from_json(const Json& j) {
  const auto& rows = as_array(j, "coloring");
  const int n = static_cast<int>(rows.size());
  if (n < 1) throw InputError("coloring must have a vertex");
  ColoredCompleteGraph g(n);
  for (int u = 0; u < n; ++u) {
    const auto& row = as_array(rows[static_cast<std::size_t>(u)], "coloring row");
    if (static_cast<int>(row.size()) != n) throw InputError("coloring must be square");
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const int c = as_int(rows[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)], "color");
      if (as_int(rows[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)], "color") != c)
        throw InputError("coloring must be symmetric");
      g.set_color(u, v, c);
    }
  return g;
}

inline Json to_json(const ColoredCompleteGraph& g) {
  Json rows = Json::array();
  for (int u = 0; u < g.n(); ++u) {
    std::vector<int> row;
    for (int v = 0; v < g.n(); ++v) row.push_back(u == v ? -1 : g.color(u, v));
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Instance files.

struct CustomGraphInstance {
  DependencyGraph graph;
  std::vector<Rational> p;
  std::optional<std::vector<Rational>> x;
  std::optional<std::vector<Rational>> y;
};

struct ExplicitSpaceInstance {
  ExplicitSpace space;
  std::optional<std::vector<Rational>> x;
  std::optional<std::vector<Rational>> y;
};

struct LatinInstance {
  ColorMatrix matrix;
  int t = 1;
};

struct RainbowMatchingInstance {
  ColoredCompleteGraph coloring;
};

struct RainbowTreeInstance {
  ColoredCompleteGraph coloring;
  int t = 1;
};

struct Instance {
  std::string kind;
  std::optional<std::uint64_t> seed;
  std::variant<CustomGraphInstance, ExplicitSpaceInstance, LatinInstance, RainbowMatchingInstance, RainbowTreeInstance>
      payload;
};

namespace detail {

inline std::optional<std::vector<Rational>> optional_vector(const Json& j, const char* key, int n) {
  const Json* v = optional_field(j, key);
  if (!v) return std::nullopt;
  auto out = parse_probabilities(*v, key);
  if (static_cast<int>(out.size()) != n) throw InputError(std::string(key) + " must list one value per event");
  return out;
}

inline std::optional<std::vector<Rational>> optional_weights(const Json& j, const char* key, int n) {
  const Json* v = optional_field(j, key);
  if (!v) return std::nullopt;
  std::vector<Rational> out;
  for (const auto& e : as_array(*v, key)) {
    Rational r = e.is_string() ? parse_rational(e.get<std::string>()) : e.is_number() ? parse_rational(e.dump()) : Rational(-1);
    if (r < 0) throw InputError(std::string(key) + " entries must be nonnegative numbers");
    out.push_back(r);
  }
  if (static_cast<int>(out.size()) != n) throw InputError(std::string(key) + " must list one value per event");
  return out;
}

/// Generator object {"n" or "vertices", "cap", "seed"}; seed defaults to 0.
inline Rng generator_rng(const Json& g) {
  const Json* s = optional_field(g, "seed");
  return Rng(s ? as_u64(*s, "generator seed") : 0);
}

}  // namespace detail

/// Parses and validates an instance file. Applications take either an
/// explicit coloring or a "generator" object.
inline Instance instance_from_json(const Json& j) {
  Instance inst;
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  const auto& kind = field(j, "kind");
  if (!kind.is_string()) throw InputError("kind must be a string");
  inst.kind = kind.get<std::string>();
  if (const Json* s = optional_field(j, "seed")) inst.seed = as_u64(*s, "seed");

  if (inst.kind == "custom-graph") {
    auto g = graph_from_json(field(j, "graph"));
    auto p = parse_probabilities(field(j, "p"), "p");
    if (static_cast<int>(p.size()) != g.n()) throw InputError("p must list one value per event");
    auto x = detail::optional_vector(j, "x", g.n());
    auto y = detail::optional_weights(j, "y", g.n());
    inst.payload = CustomGraphInstance{std::move(g), std::move(p), std::move(x), std::move(y)};
  } else if (inst.kind == "explicit-space") {
    auto sp = explicit_space_from_json(j);
    const int n = sp.num_events();
    inst.payload = ExplicitSpaceInstance{std::move(sp), detail::optional_vector(j, "x", n), detail::optional_weights(j, "y", n)};
  } else if (inst.kind == "latin") {
    const int t = as_int(field(j, "t"), "t", 1, 1 << 16);
    if (const Json* m = optional_field(j, "matrix")) {
      inst.payload = LatinInstance{color_matrix_from_json(*m), t};
    } else {
      const auto& g = field(j, "generator");
      Rng rng = detail::generator_rng(g);
      const int n = as_int(field(g, "n"), "generator n", 1, 4096);
      const int cap = as_int(field(g, "cap"), "generator cap", 1, 1 << 24);
      inst.payload = LatinInstance{random_capped_matrix(n, cap, rng), t};
    }
  } else if (inst.kind == "rainbow-matching" || inst.kind == "rainbow-tree") {
    std::optional<ColoredCompleteGraph> col;
    if (const Json* c = optional_field(j, "coloring")) {
      col = coloring_from_json(*c);
    } else {
      const auto& g = field(j, "generator");
      const int n = as_int(field(g, "n"), "generator n", 1, 4096);
      const Json* proper = optional_field(g, "proper");
      if (proper && proper->is_boolean() && proper->get<bool>()) {
        col = round_robin_coloring(n);
      } else {
        Rng rng = detail::generator_rng(g);
        col = random_capped_coloring(n, as_int(field(g, "cap"), "generator cap", 1, 1 << 24), rng);
      }
    }
    if (inst.kind == "rainbow-matching") {
      inst.payload = RainbowMatchingInstance{std::move(*col)};
    } else {
      inst.payload = RainbowTreeInstance{std::move(*col), as_int(field(j, "t"), "t", 1, 1 << 16)};
    }
  } else {
    throw InputError("unknown instance kind '" + inst.kind + "'");
  }
  return inst;
}

/// Parses text, turning syntax errors into input errors.
inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace lll::io
