#pragma once

// Structural procedures on digraphs: strong connectivity, sink-/source-sets,
// s-cycles, cycle components, and the heart of a preheart.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "digraph.hpp"
#include "error.hpp"

namespace scd {

namespace detail {

inline std::vector<char> reach(const Adjacency& adj, std::size_t start, bool forward) {
  std::vector<char> seen(adj.vertex_count(), 0);
  std::vector<std::size_t> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : forward ? adj.out(v) : adj.in(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

inline bool all_set(const std::vector<char>& flags) {
  return std::all_of(flags.begin(), flags.end(), [](char f) { return f != 0; });
}

}  // namespace detail

/// True iff every ordered pair of vertices is joined by a directed path.
template <ArcListGraph G>
bool is_strongly_connected(const G& g) {
  detail::require(g.vertex_count() >= 1, "is_strongly_connected: empty digraph");
  const Adjacency adj(g);
  return detail::all_set(detail::reach(adj, 0, true)) && detail::all_set(detail::reach(adj, 0, false));
}

/// Reachability closure of v0 (sorted). It is a sink-set iff it is not all of V.
template <ArcListGraph G>
std::vector<std::size_t> find_sink_set_from(const G& g, std::size_t v0) {
  detail::require(v0 < g.vertex_count(), "find_sink_set_from: vertex out of range");
  const Adjacency adj(g);
  // S starts as {v0}; pending holds the out-points of S not yet followed.
  std::vector<char> in_s(g.vertex_count(), 0);
  in_s[v0] = 1;
  std::vector<std::size_t> pending(adj.out(v0).begin(), adj.out(v0).end());
  while (!pending.empty()) {
    const std::size_t v = pending.back();
    pending.pop_back();
    if (in_s[v]) continue;
    in_s[v] = 1;
    pending.insert(pending.end(), adj.out(v).begin(), adj.out(v).end());
  }
  std::vector<std::size_t> s;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (in_s[v]) s.push_back(v);
  }
  return s;
}

enum class SSetKind { none, plain, complex };

struct SSetClassification {
  SSetKind sink = SSetKind::none;
  SSetKind source = SSetKind::none;

  bool is_sink_set() const { return sink != SSetKind::none; }
  bool is_source_set() const { return source != SSetKind::none; }
  bool is_s_set() const { return is_sink_set() || is_source_set(); }
  bool is_plain() const { return sink == SSetKind::plain || source == SSetKind::plain; }
};

/// Classifies a nonempty proper vertex subset as sink-set and/or source-set,
/// plain or complex.
template <ArcListGraph G>
SSetClassification classify_s_set(const G& g, const std::vector<std::size_t>& s) {
  const std::size_t n = g.vertex_count();
  std::vector<char> member(n, 0);
  std::size_t size = 0;
  for (std::size_t v : s) {
    detail::require(v < n, "classify_s_set: vertex out of range");
    if (!member[v]) ++size;
    member[v] = 1;
  }
  detail::require(size > 0 && size < n, "classify_s_set: set must be a non-empty proper subset");

  bool leaves = false;
  bool enters = false;
  for (const auto& a : g.arcs()) {
    if (member[a.tail] && !member[a.head]) leaves = true;
    if (!member[a.tail] && member[a.head]) enters = true;
  }
  const Adjacency adj(g);
  bool out_one = true;
  bool in_one = true;
  for (std::size_t v = 0; v < n; ++v) {
    if (!member[v]) continue;
    out_one = out_one && adj.out_degree(v) == 1;
    in_one = in_one && adj.in_degree(v) == 1;
  }
  SSetClassification c;
  if (!leaves) c.sink = out_one ? SSetKind::plain : SSetKind::complex;
  if (!enters) c.source = in_one ? SSetKind::plain : SSetKind::complex;
  return c;
}

enum class SCycleKind { sink, source, both };

struct SCycle {
  // In cyclic (arc) order, rotated to start at the smallest vertex.
  std::vector<std::size_t> vertices;
  SCycleKind kind = SCycleKind::sink;
};

namespace detail {

inline std::vector<std::size_t> rotate_to_min(std::vector<std::size_t> cycle) {
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

// Cycles of the partial functional graph v -> next[v] (next[v] == npos: undefined).
inline std::vector<std::vector<std::size_t>> functional_cycles(const std::vector<std::size_t>& next) {
  constexpr auto npos = static_cast<std::size_t>(-1);
  const std::size_t n = next.size();
  std::vector<std::size_t> walk_id(n, npos);
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t start = 0; start < n; ++start) {
    if (walk_id[start] != npos || next[start] == npos) continue;
    std::size_t v = start;
    std::vector<std::size_t> path;
    while (v != npos && walk_id[v] == npos) {
      walk_id[v] = start;
      path.push_back(v);
      v = next[v];
    }
    if (v != npos && walk_id[v] == start) {
      const auto pos = std::find(path.begin(), path.end(), v);
      cycles.emplace_back(pos, path.end());
    }
  }
  return cycles;
}

}  // namespace detail

/// All s-cycles of length <= max_len: vertex sets inducing a directed cycle
/// whose members all have outdegree 1 (sink-cycle) or indegree 1
/// (source-cycle). Requires minimum in- and outdegree >= 1.
template <ArcListGraph G>
std::vector<SCycle> enumerate_s_cycles(const G& g, std::size_t max_len, bool include_loops = true) {
  constexpr auto npos = static_cast<std::size_t>(-1);
  const Adjacency adj(g);
  const std::size_t n = g.vertex_count();
  detail::require(n >= 1 && adj.min_out_degree() >= 1 && adj.min_in_degree() >= 1,
                  "enumerate_s_cycles: input must have all in- and outdegrees >= 1");

  std::vector<std::size_t> succ(n, npos);
  std::vector<std::size_t> pred(n, npos);
  for (std::size_t v = 0; v < n; ++v) {
    if (adj.out_degree(v) == 1) succ[v] = adj.out(v)[0];
    if (adj.in_degree(v) == 1) pred[v] = adj.in(v)[0];
  }

  std::map<std::vector<std::size_t>, SCycle> found;
  const auto record = [&](std::vector<std::size_t> cyc, SCycleKind kind) {
    if (cyc.size() > max_len || (!include_loops && cyc.size() == 1)) return;
    auto key = cyc;
    std::sort(key.begin(), key.end());
    auto [it, inserted] = found.try_emplace(std::move(key), SCycle{detail::rotate_to_min(std::move(cyc)), kind});
    if (!inserted && it->second.kind != kind) it->second.kind = SCycleKind::both;
  };
  for (auto& cyc : detail::functional_cycles(succ)) record(std::move(cyc), SCycleKind::sink);
  for (auto& cyc : detail::functional_cycles(pred)) {
    std::reverse(cyc.begin(), cyc.end());
    record(std::move(cyc), SCycleKind::source);
  }

  std::vector<SCycle> out;
  out.reserve(found.size());
  for (auto& [key, cyc] : found) out.push_back(std::move(cyc));
  std::stable_sort(out.begin(), out.end(),
                   [](const SCycle& a, const SCycle& b) { return a.vertices.size() < b.vertices.size(); });
  return out;
}

/// Weakly connected components that are bare directed cycles (every member
/// has in = out = 1). A vertex whose only arc is a loop is one of length 1.
template <ArcListGraph G>
std::vector<std::vector<std::size_t>> cycle_components(const G& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  const auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& a : g.arcs()) parent[find(a.tail)] = find(a.head);

  const Adjacency adj(g);
  std::vector<char> bad(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (adj.in_degree(v) != 1 || adj.out_degree(v) != 1) bad[find(v)] = 1;
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t v = 0; v < n; ++v) {
    if (!bad[find(v)]) groups[find(v)].push_back(v);
  }
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

struct Heart {
  MultiDigraph graph;
  // vertices[i] is the label in the input digraph of heart vertex i.
  std::vector<std::size_t> vertices;
};

/// Suppresses every vertex of in- and outdegree 1 (u->v->w becomes u->w),
/// keeping parallel arcs and loops. Input must be a preheart.
template <ArcListGraph G>
Heart heart(const G& g) {
  constexpr auto npos = static_cast<std::size_t>(-1);
  const std::size_t n = g.vertex_count();
  const Adjacency adj(g);
  detail::require(n >= 1 && adj.min_out_degree() >= 1 && adj.min_in_degree() >= 1,
                  "heart: input must have all in- and outdegrees >= 1");
  if (!cycle_components(g).empty()) throw domain_error("heart: input has a cycle component (not a preheart)");

  Heart h;
  std::vector<std::size_t> index(n, npos);
  for (std::size_t v = 0; v < n; ++v) {
    if (!(adj.in_degree(v) == 1 && adj.out_degree(v) == 1)) {
      index[v] = h.vertices.size();
      h.vertices.push_back(v);
    }
  }
  h.graph = MultiDigraph(h.vertices.size());
  for (std::size_t u : h.vertices) {
    for (std::size_t w : adj.out(u)) {
      while (index[w] == npos) w = adj.out(w)[0];
      h.graph.add_arc(index[u], index[w]);
    }
  }
  return h;
}

/// Degree-class statistics of a dicore. a[i][j]: indegree type i, outdegree
/// type j, where type 1 means exactly 1 and type 2 means at least 2.
struct HeartStats {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n_prime = 0;
  std::size_t m_prime = 0;
  std::size_t a11 = 0, a12 = 0, a21 = 0, a22 = 0;
  long long r = 0;
  bool a12_typical = false;
  bool a21_typical = false;
  bool a22_typical = false;

  bool gamma() const { return a12_typical && a21_typical && a22_typical; }
};

inline HeartStats degree_stats_from_degrees(const std::vector<std::size_t>& out_deg,
                                            const std::vector<std::size_t>& in_deg) {
  HeartStats s;
  s.n = out_deg.size();
  for (std::size_t v = 0; v < s.n; ++v) {
    detail::require(out_deg[v] >= 1 && in_deg[v] >= 1, "degree_stats: input must be a dicore");
    s.m += out_deg[v];
    const bool in1 = in_deg[v] == 1;
    const bool out1 = out_deg[v] == 1;
    if (in1 && out1) {
      ++s.a11;
    } else {
      s.m_prime += out_deg[v];
      if (in1) ++s.a12;
      else if (out1) ++s.a21;
      else ++s.a22;
    }
  }
  s.n_prime = s.a12 + s.a21 + s.a22;
  s.r = static_cast<long long>(s.m) - static_cast<long long>(s.n);
  const double r = static_cast<double>(s.r);
  const double spread = s.r >= 2 ? std::sqrt(r) * std::log(r) : 0.0;
  s.a12_typical = std::abs(static_cast<double>(s.a12) - r) <= spread;
  s.a21_typical = std::abs(static_cast<double>(s.a21) - r) <= spread;
  s.a22_typical = static_cast<double>(s.a22) <= std::max(2.0 * r * r / static_cast<double>(s.n), std::sqrt(r));
  return s;
}

template <ArcListGraph G>
HeartStats degree_stats(const G& g) {
  const Adjacency adj(g);
  std::vector<std::size_t> out_deg(g.vertex_count());
  std::vector<std::size_t> in_deg(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out_deg[v] = adj.out_degree(v);
    in_deg[v] = adj.in_degree(v);
  }
  return degree_stats_from_degrees(out_deg, in_deg);
}

}  // namespace scd
