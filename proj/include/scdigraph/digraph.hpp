#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace scd {

struct Arc {
  std::size_t tail = 0;
  std::size_t head = 0;

  bool is_loop() const { return tail == head; }
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Labelled multidigraph: parallel arcs and loops allowed. Hearts and raw
/// pairings live here.
class MultiDigraph {
 public:
  MultiDigraph() = default;
  explicit MultiDigraph(std::size_t n, std::vector<Arc> arcs = {}) : n_(n), arcs_(std::move(arcs)) {
    for (const auto& a : arcs_) check_arc(a);
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  const std::vector<Arc>& arcs() const { return arcs_; }

  void add_arc(std::size_t tail, std::size_t head) {
    check_arc({tail, head});
    arcs_.push_back({tail, head});
  }

  bool has_loops() const {
    return std::any_of(arcs_.begin(), arcs_.end(), [](const Arc& a) { return a.is_loop(); });
  }

  bool has_multiple_arcs() const {
    auto sorted = arcs_;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
  }

  // Same multigraph with arcs sorted; equality of canonical forms is
  // multigraph equality.
  MultiDigraph canonical() const {
    auto sorted = arcs_;
    std::sort(sorted.begin(), sorted.end());
    return MultiDigraph(n_, std::move(sorted));
  }

  friend bool operator==(const MultiDigraph& a, const MultiDigraph& b) {
    if (a.n_ != b.n_ || a.arcs_.size() != b.arcs_.size()) return false;
    return a.canonical().arcs_ == b.canonical().arcs_;
  }

 private:
  void check_arc(const Arc& a) const {
    if (a.tail >= n_ || a.head >= n_) {
      throw domain_error("arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                         ") out of range for n=" + std::to_string(n_));
    }
  }

  std::size_t n_ = 0;
  std::vector<Arc> arcs_;
};

/// Simple labelled digraph: no parallel arcs; loops only if allowed.
/// Arcs are kept sorted.
class Digraph {
 public:
  Digraph() = default;
  Digraph(std::size_t n, std::vector<Arc> arcs, bool allow_loops = true)
      : n_(n), allow_loops_(allow_loops), arcs_(std::move(arcs)) {
    std::sort(arcs_.begin(), arcs_.end());
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
      const auto& a = arcs_[i];
      if (a.tail >= n_ || a.head >= n_) {
        throw domain_error("arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) +
                           ") out of range for n=" + std::to_string(n_));
      }
      if (!allow_loops_ && a.is_loop()) throw domain_error("loop at vertex " + std::to_string(a.tail) + " not allowed");
      if (i > 0 && arcs_[i - 1] == a) {
        throw domain_error("duplicate arc (" + std::to_string(a.tail) + "," + std::to_string(a.head) + ")");
      }
    }
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t arc_count() const { return arcs_.size(); }
  bool allow_loops() const { return allow_loops_; }
  const std::vector<Arc>& arcs() const { return arcs_; }

  MultiDigraph to_multi() const { return MultiDigraph(n_, arcs_); }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::size_t n_ = 0;
  bool allow_loops_ = true;
  std::vector<Arc> arcs_;
};

template <class G>
concept ArcListGraph = requires(const G& g) {
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  { g.arcs() } -> std::convertible_to<const std::vector<Arc>&>;
};

/// CSR out- and in-neighbourhoods. A loop contributes one to both degrees.
class Adjacency {
 public:
  template <ArcListGraph G>
  explicit Adjacency(const G& g) : n_(g.vertex_count()) {
    out_offset_.assign(n_ + 1, 0);
    in_offset_.assign(n_ + 1, 0);
    for (const auto& a : g.arcs()) {
      ++out_offset_[a.tail + 1];
      ++in_offset_[a.head + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) {
      out_offset_[v + 1] += out_offset_[v];
      in_offset_[v + 1] += in_offset_[v];
    }
    out_target_.resize(g.arcs().size());
    in_source_.resize(g.arcs().size());
    auto out_fill = out_offset_;
    auto in_fill = in_offset_;
    for (const auto& a : g.arcs()) {
      out_target_[out_fill[a.tail]++] = a.head;
      in_source_[in_fill[a.head]++] = a.tail;
    }
  }

  std::size_t vertex_count() const { return n_; }
  std::span<const std::size_t> out(std::size_t v) const {
    return {out_target_.data() + out_offset_[v], out_offset_[v + 1] - out_offset_[v]};
  }
  std::span<const std::size_t> in(std::size_t v) const {
    return {in_source_.data() + in_offset_[v], in_offset_[v + 1] - in_offset_[v]};
  }
  std::size_t out_degree(std::size_t v) const { return out_offset_[v + 1] - out_offset_[v]; }
  std::size_t in_degree(std::size_t v) const { return in_offset_[v + 1] - in_offset_[v]; }

  std::size_t min_out_degree() const {
    std::size_t d = n_ == 0 ? 0 : out_degree(0);
    for (std::size_t v = 1; v < n_; ++v) d = std::min(d, out_degree(v));
    return d;
  }
  std::size_t min_in_degree() const {
    std::size_t d = n_ == 0 ? 0 : in_degree(0);
    for (std::size_t v = 1; v < n_; ++v) d = std::min(d, in_degree(v));
    return d;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> out_offset_, out_target_;
  std::vector<std::size_t> in_offset_, in_source_;
};

// ---------------------------------------------------------------------------
// Edge-list text format:
//   # n m [loops|noloops]
//   u v
//   ...
// 0-indexed, one arc per line.

template <ArcListGraph G>
void write_edge_list(std::ostream& os, const G& g, bool loops = true) {
  os << "# " << g.vertex_count() << ' ' << g.arcs().size() << ' ' << (loops ? "loops" : "noloops") << '\n';
  for (const auto& a : g.arcs()) os << a.tail << ' ' << a.head << '\n';
}

inline void write_edge_list(std::ostream& os, const Digraph& g) {
  write_edge_list<Digraph>(os, g, g.allow_loops());
}

namespace detail {

struct EdgeListContents {
  std::size_t n = 0;
  bool loops = true;
  std::vector<Arc> arcs;
};

inline EdgeListContents parse_edge_list(std::istream& is) {
  EdgeListContents out;
  std::string line;
  if (!std::getline(is, line)) throw parse_error("edge list: missing header line");
  std::istringstream header(line);
  std::string hash;
  long long n = -1;
  long long m = -1;
  header >> hash >> n >> m;
  if (hash != "#" || !header || n < 0 || m < 0) throw parse_error("edge list: malformed header '" + line + "'");
  std::string mode;
  if (header >> mode) {
    if (mode == "loops") {
      out.loops = true;
    } else if (mode == "noloops") {
      out.loops = false;
    } else {
      throw parse_error("edge list: unknown loop mode '" + mode + "'");
    }
  }
  out.n = static_cast<std::size_t>(n);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    long long u = -1;
    long long v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) {
      throw parse_error("edge list: malformed arc on line " + std::to_string(line_no));
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw parse_error("edge list: vertex out of range on line " + std::to_string(line_no));
    }
    if (!out.loops && u == v) throw parse_error("edge list: loop on line " + std::to_string(line_no) + " in noloops file");
    out.arcs.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
  }
  if (out.arcs.size() != static_cast<std::size_t>(m)) {
    throw parse_error("edge list: header declares " + std::to_string(m) + " arcs, found " +
                      std::to_string(out.arcs.size()));
  }
  return out;
}

}  // namespace detail

inline Digraph read_digraph(std::istream& is) {
  auto contents = detail::parse_edge_list(is);
  auto sorted = contents.arcs;
  std::sort(sorted.begin(), sorted.end());
  if (auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw parse_error("edge list: duplicate arc " + std::to_string(dup->tail) + " " + std::to_string(dup->head));
  }
  return Digraph(contents.n, std::move(contents.arcs), contents.loops);
}

inline MultiDigraph read_multidigraph(std::istream& is) {
  auto contents = detail::parse_edge_list(is);
  return MultiDigraph(contents.n, std::move(contents.arcs));
}

}  // namespace scd
