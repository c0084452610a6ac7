#pragma once

// Directed pairing model and the samplers built on it: uniform dicores,
// heart/preheart configurations, and Monte Carlo estimators of the limiting
// constants.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "asymptotic_counts.hpp"
#include "digraph.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "statistics.hpp"
#include "structure.hpp"
#include "truncated_poisson.hpp"

namespace scd {

/// A perfect matching between the m out-points and m in-points of a degree
/// sequence. Points are grouped by vertex in vertex order; out-point i is
/// matched to in-point matching[i].
struct Pairing {
  DegreeSequence degrees;
  std::vector<std::size_t> matching;

  /// Induced arcs, one per out-point, in out-point order (grouped by tail).
  std::vector<Arc> arcs() const {
    std::vector<std::size_t> in_owner;
    in_owner.reserve(degrees.m);
    for (std::size_t v = 0; v < degrees.vertex_count(); ++v) in_owner.insert(in_owner.end(), degrees.in_degrees[v], v);
    std::vector<Arc> out;
    out.reserve(degrees.m);
    std::size_t point = 0;
    for (std::size_t v = 0; v < degrees.vertex_count(); ++v) {
      for (std::size_t d = 0; d < degrees.out_degrees[v]; ++d) out.push_back({v, in_owner[matching[point++]]});
    }
    return out;
  }

  MultiDigraph to_multidigraph() const { return MultiDigraph(degrees.vertex_count(), arcs()); }
};

/// Uniformly random pairing for the given degree sequence.
inline Pairing random_pairing(const DegreeSequence& degrees, rng_type& rng) {
  detail::require(degrees.is_valid(), "random_pairing: out- and in-degrees must both sum to m");
  Pairing p{degrees, std::vector<std::size_t>(degrees.m)};
  std::iota(p.matching.begin(), p.matching.end(), std::size_t{0});
  std::shuffle(p.matching.begin(), p.matching.end(), rng);
  return p;
}

/// True when arcs (grouped by tail) contain no parallel pair, and no loop
/// when loops are forbidden.
inline bool arcs_are_simple(std::size_t n, const std::vector<Arc>& grouped_arcs, bool loop_free,
                            std::vector<std::size_t>& stamp) {
  stamp.assign(n, 0);
  for (const auto& a : grouped_arcs) {
    if (loop_free && a.is_loop()) return false;
    if (stamp[a.head] == a.tail + 1) return false;
    stamp[a.head] = a.tail + 1;
  }
  return true;
}

inline bool is_simple(const Pairing& p, bool loop_free = false) {
  std::vector<std::size_t> stamp;
  return arcs_are_simple(p.degrees.vertex_count(), p.arcs(), loop_free, stamp);
}

/// Out- and in-degree sequences drawn independently from TPo_{k+} and TPo_{k-}
/// conditioned on both summing to m.
inline DegreeSequence sample_degree_sequence(std::size_t n, std::size_t m, int kplus, int kminus, rng_type& rng) {
  DegreeSequence d;
  d.out_degrees = sample_conditioned_sequence(n, m, kplus, rng);
  d.in_degrees = sample_conditioned_sequence(n, m, kminus, rng);
  d.m = m;
  return d;
}

struct DicoreSamplerStats {
  std::uint64_t pairings_drawn = 0;
};

inline constexpr std::uint64_t default_pairing_ceiling = 10'000'000;

namespace detail {

inline void check_dicore_feasible(std::size_t n, std::size_t m, int kplus, int kminus, bool loop_free) {
  require(n >= 1, "sample_dicore: n must be positive");
  require(kplus >= 0 && kminus >= 0, "sample_dicore: minimum degrees must be nonnegative");
  const std::size_t width = loop_free ? n - 1 : n;
  const auto kp = static_cast<std::size_t>(kplus);
  const auto km = static_cast<std::size_t>(kminus);
  require(kp <= width && km <= width,
          "sample_dicore: minimum degree exceeds the " + std::to_string(width) + " available heads/tails");
  require(m >= kp * n && m >= km * n, "sample_dicore: need m >= max(k+, k-) n");
  require(m <= n * width, "sample_dicore: m exceeds the number of available arcs");
}

inline double expected_acceptance(std::size_t n, std::size_t m, int kplus, int kminus, bool loop_free) {
  const double c = static_cast<double>(m) / static_cast<double>(n);
  if (c <= kplus || c <= kminus) return 1.0;
  return simple_probability(solve_lambda(c, kplus).lambda, solve_lambda(c, kminus).lambda, c, loop_free);
}

}  // namespace detail

/// Uniform simple digraph with n vertices, m arcs, outdegrees >= kplus and
/// indegrees >= kminus (no loops when loop_free): draw a conditioned degree
/// sequence and a pairing, and restart both until the pairing is simple.
inline Digraph sample_dicore(std::size_t n, std::size_t m, int kplus, int kminus, bool loop_free, rng_type& rng,
                             DicoreSamplerStats* stats = nullptr,
                             std::uint64_t max_pairings = default_pairing_ceiling) {
  detail::check_dicore_feasible(n, m, kplus, kminus, loop_free);
  std::vector<std::size_t> stamp;
  for (std::uint64_t draw = 1; draw <= max_pairings; ++draw) {
    const Pairing p = random_pairing(sample_degree_sequence(n, m, kplus, kminus, rng), rng);
    auto arcs = p.arcs();
    if (!arcs_are_simple(n, arcs, loop_free, stamp)) continue;
    if (stats) stats->pairings_drawn += draw;
    return Digraph(n, std::move(arcs), !loop_free);
  }
  throw resource_error("sample_dicore: no simple pairing in " + std::to_string(max_pairings) +
                       " draws (expected acceptance " +
                       std::to_string(detail::expected_acceptance(n, m, kplus, kminus, loop_free)) + ")");
}

// ---------------------------------------------------------------------------
// Heart and preheart configurations

struct HeartConfiguration {
  DegreeSequence degrees;
  // Vertices of total degree >= 3, ascending; heart vertex i is heart_vertices[i].
  std::vector<std::size_t> heart_vertices;
  // One arc per matched point pair, on heart indices.
  MultiDigraph heart;
  // Degree-(1,1) vertices inserted into each heart arc, in path order.
  std::vector<std::vector<std::size_t>> arc_insertions;
  // The expanded multidigraph on all n vertices.
  MultiDigraph preheart;
  // Degree sequences redrawn because every vertex had degree (1,1).
  std::size_t empty_heart_resamples = 0;
};

/// Draws d from the conditioned degree space, matches the points of the
/// vertices of total degree >= 3 uniformly, then assigns the remaining
/// vertices to heart arcs with uniformly random linear orders.
inline HeartConfiguration sample_heart_configuration(std::size_t n, std::size_t m, rng_type& rng) {
  detail::require(n >= 1 && m > n, "sample_heart_configuration: need m > n");
  HeartConfiguration h;
  for (;;) {
    h.degrees = sample_degree_sequence(n, m, 1, 1, rng);
    h.heart_vertices.clear();
    for (std::size_t v = 0; v < n; ++v) {
      if (h.degrees.out_degrees[v] + h.degrees.in_degrees[v] >= 3) h.heart_vertices.push_back(v);
    }
    if (!h.heart_vertices.empty()) break;
    ++h.empty_heart_resamples;
  }

  const std::size_t n_heart = h.heart_vertices.size();
  DegreeSequence heart_degrees;
  for (std::size_t v : h.heart_vertices) {
    heart_degrees.out_degrees.push_back(h.degrees.out_degrees[v]);
    heart_degrees.in_degrees.push_back(h.degrees.in_degrees[v]);
    heart_degrees.m += h.degrees.out_degrees[v];
  }
  const std::size_t m_heart = heart_degrees.m;
  h.heart = random_pairing(heart_degrees, rng).to_multidigraph();

  // Ordered lists on m' arcs <-> (permutation of the n - n' vertices,
  // composition of n - n' into m' parts); both uniform.
  std::vector<std::size_t> loose;
  loose.reserve(n - n_heart);
  for (std::size_t v = 0, t = 0; v < n; ++v) {
    if (t < n_heart && h.heart_vertices[t] == v) {
      ++t;
    } else {
      loose.push_back(v);
    }
  }
  std::shuffle(loose.begin(), loose.end(), rng);
  std::vector<char> is_bar(loose.size() + m_heart - 1, 0);
  std::fill(is_bar.begin(), is_bar.begin() + static_cast<std::ptrdiff_t>(m_heart - 1), 1);
  std::shuffle(is_bar.begin(), is_bar.end(), rng);

  h.arc_insertions.assign(m_heart, {});
  std::size_t arc = 0;
  std::size_t next_loose = 0;
  for (char bar : is_bar) {
    if (bar) {
      ++arc;
    } else {
      h.arc_insertions[arc].push_back(loose[next_loose++]);
    }
  }

  h.preheart = MultiDigraph(n);
  for (std::size_t i = 0; i < m_heart; ++i) {
    const Arc& a = h.heart.arcs()[i];
    std::size_t from = h.heart_vertices[a.tail];
    for (std::size_t v : h.arc_insertions[i]) {
      h.preheart.add_arc(from, v);
      from = v;
    }
    h.preheart.add_arc(from, h.heart_vertices[a.head]);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Monte Carlo estimators

struct McReport {
  std::string experiment;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t trials = 0;
  double estimate = 0.0;
  double stderr_ = 0.0;
  double theory = 0.0;
  std::uint64_t seed = 0;
  bool loop_free = false;
  // Experiment-specific diagnostics, in a fixed order.
  std::vector<std::pair<std::string, double>> details;
  std::vector<std::string> warnings;

  double detail(const std::string& key) const {
    for (const auto& [k, v] : details) {
      if (k == key) return v;
    }
    return std::nan("");
  }
};

struct McOptions {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  bool loop_free = false;
};

namespace detail {

inline McReport make_report(const char* experiment, std::size_t n, std::size_t m, std::size_t trials,
                            const McOptions& opt) {
  McReport r;
  r.experiment = experiment;
  r.n = n;
  r.m = m;
  r.trials = trials;
  r.seed = opt.seed;
  r.loop_free = opt.loop_free;
  return r;
}

inline void bounded_c_warning(McReport& r) {
  const double c = static_cast<double>(r.m) / static_cast<double>(r.n);
  if (c <= 1.1 || c >= 4.0) {
    r.warnings.push_back("c = " + std::to_string(c) + " is outside (1.1, 4); the limiting constant converges slowly");
  }
}

}  // namespace detail

/// Fraction of uniform dicores that are strongly connected, against phi.
inline McReport mc_strong_probability(std::size_t n, std::size_t m, std::size_t trials, const McOptions& opt) {
  detail::require(trials >= 1, "mc: trials must be positive");
  detail::require(n >= 1 && m > n, "mc_strong_probability: need m > n");
  McReport r = detail::make_report("strong", n, m, trials, opt);
  detail::bounded_c_warning(r);
  struct Trial {
    bool strong = false;
    std::uint64_t pairings = 0;
  };
  const auto results = parallel_map<Trial>(trials, opt.jobs, [&](std::size_t t) {
    rng_type rng = make_rng(opt.seed, t);
    DicoreSamplerStats stats;
    const Digraph g = sample_dicore(n, m, 1, 1, opt.loop_free, rng, &stats);
    return Trial{is_strongly_connected(g), stats.pairings_drawn};
  });
  std::size_t hits = 0;
  std::uint64_t pairings = 0;
  for (const auto& t : results) {
    hits += t.strong;
    pairings += t.pairings;
  }
  r.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  r.stderr_ = binomial_stderr(r.estimate, trials);
  const double lambda = solve_lambda(static_cast<double>(m) / static_cast<double>(n), 1).lambda;
  r.theory = phi(lambda, opt.loop_free);
  r.details = {{"strong", static_cast<double>(hits)},
               {"acceptance", static_cast<double>(trials) / static_cast<double>(pairings)}};
  return r;
}

/// Fraction of pairings (with conditioned truncated-Poisson degrees) that are
/// simple, and loop-free when requested.
inline McReport mc_simple_probability(std::size_t n, std::size_t m, std::size_t trials, const McOptions& opt) {
  detail::require(trials >= 1, "mc: trials must be positive");
  detail::require(n >= 1 && m > n, "mc_simple_probability: need m > n");
  McReport r = detail::make_report("simple", n, m, trials, opt);
  const auto results = parallel_map<char>(trials, opt.jobs, [&](std::size_t t) -> char {
    rng_type rng = make_rng(opt.seed, t);
    const Pairing p = random_pairing(sample_degree_sequence(n, m, 1, 1, rng), rng);
    return is_simple(p, opt.loop_free) ? 1 : 0;
  });
  std::size_t hits = 0;
  for (char s : results) hits += static_cast<std::size_t>(s);
  r.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  r.stderr_ = binomial_stderr(r.estimate, trials);
  const double c = static_cast<double>(m) / static_cast<double>(n);
  const double lambda = solve_lambda(c, 1).lambda;
  r.theory = simple_probability(lambda, lambda, c, opt.loop_free);
  r.details = {{"simple", static_cast<double>(hits)}};
  return r;
}

/// Mean number of s-cycles of length <= max_len in uniform dicores, against
/// mu_k. Length-1 s-cycles are loops and are excluded in loop-free mode.
inline McReport mc_scycle_census(std::size_t n, std::size_t m, std::size_t max_len, std::size_t trials,
                                 const McOptions& opt) {
  detail::require(trials >= 1, "mc: trials must be positive");
  detail::require(n >= 1 && m > n, "mc_scycle_census: need m > n");
  detail::require(max_len >= 1, "mc_scycle_census: max_len must be positive");
  McReport r = detail::make_report("scycles", n, m, trials, opt);
  detail::bounded_c_warning(r);
  struct Trial {
    std::size_t cycles = 0;
    bool strong = false;
  };
  const auto results = parallel_map<Trial>(trials, opt.jobs, [&](std::size_t t) {
    rng_type rng = make_rng(opt.seed, t);
    const Digraph g = sample_dicore(n, m, 1, 1, opt.loop_free, rng);
    return Trial{enumerate_s_cycles(g, max_len, !opt.loop_free).size(), is_strongly_connected(g)};
  });
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t strong_with_cycles = 0;
  for (const auto& t : results) {
    const auto x = static_cast<double>(t.cycles);
    sum += x;
    sum_sq += x * x;
    if (t.strong && t.cycles > 0) ++strong_with_cycles;
  }
  const auto T = static_cast<double>(trials);
  r.estimate = sum / T;
  const double variance = trials > 1 ? (sum_sq - T * r.estimate * r.estimate) / (T - 1.0) : 0.0;
  r.stderr_ = std::sqrt(variance / T);
  r.theory = mu_k(static_cast<double>(m) / static_cast<double>(n), max_len, opt.loop_free);
  r.details = {{"max_len", static_cast<double>(max_len)},
               {"variance", variance},
               {"dispersion", r.estimate > 0.0 ? variance / r.estimate : std::nan("")},
               {"strong_with_scycles", static_cast<double>(strong_with_cycles)}};
  return r;
}

/// Fraction of preheart configurations that are simple and strongly connected,
/// against 1/9.
inline McReport mc_heart_strong(std::size_t n, std::size_t m, std::size_t trials, const McOptions& opt) {
  detail::require(trials >= 1, "mc: trials must be positive");
  detail::require(n >= 1 && m > n, "mc_heart_strong: need m > n");
  McReport r = detail::make_report("heart", n, m, trials, opt);
  if (m - n > n / 10) r.warnings.push_back("m - n > n/10: outside the sparse regime of the heart constant");
  struct Trial {
    bool simple = false;
    bool heart_strong = false;
    bool heart_has_scycle = false;
    bool gamma = false;
    std::size_t resamples = 0;
  };
  const auto results = parallel_map<Trial>(trials, opt.jobs, [&](std::size_t t) {
    rng_type rng = make_rng(opt.seed, t);
    const HeartConfiguration h = sample_heart_configuration(n, m, rng);
    Trial out;
    out.simple = !h.preheart.has_multiple_arcs();
    out.heart_strong = is_strongly_connected(h.heart);
    if (!out.heart_strong) out.heart_has_scycle = !enumerate_s_cycles(h.heart, h.heart.vertex_count()).empty();
    out.gamma = degree_stats_from_degrees(h.degrees.out_degrees, h.degrees.in_degrees).gamma();
    out.resamples = h.empty_heart_resamples;
    return out;
  });
  std::size_t hits = 0, simple = 0, failures = 0, with_cycle = 0, gamma = 0, resamples = 0;
  for (const auto& t : results) {
    hits += t.simple && t.heart_strong;
    simple += t.simple;
    failures += !t.heart_strong;
    with_cycle += t.heart_has_scycle;
    gamma += t.gamma;
    resamples += t.resamples;
  }
  const auto T = static_cast<double>(trials);
  r.estimate = static_cast<double>(hits) / T;
  r.stderr_ = binomial_stderr(r.estimate, trials);
  r.theory = heart_strong_probability();
  r.details = {{"simple_rate", static_cast<double>(simple) / T},
               {"heart_not_strong", static_cast<double>(failures)},
               {"scycle_failure_ratio", failures ? static_cast<double>(with_cycle) / static_cast<double>(failures)
                                                 : std::nan("")},
               {"gamma_rate", static_cast<double>(gamma) / T},
               {"empty_heart_resamples", static_cast<double>(resamples)}};
  return r;
}

}  // namespace scd
