#pragma once

// Ground-truth counts: exhaustive enumeration for tiny n and exact
// inclusion-exclusion for dicores at moderate n.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "digraph.hpp"
#include "error.hpp"

namespace scd {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// Natural log of a positive big integer.
inline double log_big(const BigInt& x) {
  if (x <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(x);
  const std::size_t shift = bits > 60 ? bits - 60 : 0;
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

namespace detail {

// Pascal triangle rows 0..n.
inline std::vector<std::vector<BigInt>> pascal(std::size_t n) {
  std::vector<std::vector<BigInt>> rows(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    rows[i].resize(i + 1);
    rows[i][0] = rows[i][i] = 1;
    for (std::size_t j = 1; j < i; ++j) rows[i][j] = rows[i - 1][j - 1] + rows[i - 1][j];
  }
  return rows;
}

// sum_x weight[x] * C(x, m), walking C(x, m) up from x = m.
inline BigInt weighted_binomial_sum(const std::map<std::size_t, BigInt>& weight, std::size_t m) {
  BigInt total = 0;
  BigInt binom = 1;  // C(x, m) at x = m
  std::size_t x = m;
  for (const auto& [target, w] : weight) {
    if (target < m || w == 0) continue;
    while (x < target) {
      ++x;
      binom *= x;
      binom /= x - m;
    }
    total += w * binom;
  }
  return total;
}

}  // namespace detail

/// Exact number of digraphs (loops allowed) on n labelled vertices with m arcs
/// and every in- and outdegree >= 1, by inclusion-exclusion over the vertex
/// sets A (outdegree 0) and B (indegree 0):
///   sum_{a,b} (-1)^{a+b} C(n,a) C(n,b) C((n-a)(n-b), m).
inline BigInt ie_dicore_count(std::size_t n, std::size_t m) {
  detail::require(n >= 1, "ie_dicore_count: n must be positive");
  if (m > n * n) return 0;
  const auto row = detail::pascal(n)[n];
  std::map<std::size_t, BigInt> weight;
  for (std::size_t a = 0; a <= n; ++a) {
    for (std::size_t b = 0; b <= n; ++b) {
      const BigInt term = row[a] * row[b];
      auto& w = weight[(n - a) * (n - b)];
      if ((a + b) % 2 == 0) w += term;
      else w -= term;
    }
  }
  return detail::weighted_binomial_sum(weight, m);
}

/// Loop-free counterpart: inclusion-exclusion additionally tracking j = |A ∩ B|,
/// since loops are only excluded on the n - a - b + j vertices outside A ∪ B.
inline BigInt ie_dicore_count_loopfree(std::size_t n, std::size_t m) {
  detail::require(n >= 1, "ie_dicore_count_loopfree: n must be positive");
  if (m > n * (n - 1)) return 0;
  const auto rows = detail::pascal(n);
  std::map<std::size_t, BigInt> weight;
  for (std::size_t j = 0; j <= n; ++j) {
    for (std::size_t a = j; a <= n; ++a) {
      for (std::size_t b = j; b <= n; ++b) {
        if (a + b - j > n) break;
        const std::size_t outside = n - a - b + j;
        // n! / (j! (a-j)! (b-j)! outside!) = C(n,a) C(a,j) C(n-a, b-j)
        const BigInt term = rows[n][a] * rows[a][j] * rows[n - a][b - j];
        auto& w = weight[(n - a) * (n - b) - outside];
        if ((a + b) % 2 == 0) w += term;
        else w -= term;
      }
    }
  }
  return detail::weighted_binomial_sum(weight, m);
}

struct CensusResult {
  std::size_t n = 0;
  std::size_t m = 0;
  bool loop_free = false;
  BigInt total = 0;
  BigInt strongly_connected = 0;
  BigInt dicore = 0;
  // (k+, k-) -> digraphs with all outdegrees >= k+ and indegrees >= k-,
  // for 1 <= k+, k- <= n.
  std::map<std::pair<int, int>, BigInt> kdicore;

  BigInt kdicore_count(int kplus, int kminus) const {
    if (kplus <= 0 && kminus <= 0) return total;
    const auto it = kdicore.find({std::max(kplus, 1), std::max(kminus, 1)});
    return it == kdicore.end() ? BigInt(0) : it->second;
  }
};

/// Arc universe in a fixed order: all (u, v), skipping loops when loop_free.
inline std::vector<Arc> arc_universe(std::size_t n, bool loop_free) {
  std::vector<Arc> universe;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (!(loop_free && u == v)) universe.push_back({u, v});
    }
  }
  return universe;
}

namespace detail {

inline constexpr std::uint64_t census_guard = 100'000'000;

inline void check_census_size(std::size_t n, std::size_t universe, std::size_t m) {
  if (n > 5) throw resource_error("brute force limited to n <= 5 (got n=" + std::to_string(n) + ")");
  const BigInt size = binomial(universe, m);
  if (size > census_guard) {
    throw resource_error("brute force would enumerate C(" + std::to_string(universe) + "," + std::to_string(m) +
                         ") = " + size.str() + " digraphs (limit 1e8)");
  }
}

// Calls fn(mask) for every m-subset of {0..u-1} (Gosper's hack).
template <class Fn>
void for_each_subset(std::size_t u, std::size_t m, Fn&& fn) {
  if (m > u) return;
  if (m == 0) {
    fn(std::uint64_t{0});
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << u;
  std::uint64_t mask = (std::uint64_t{1} << m) - 1;
  while (mask < limit) {
    fn(mask);
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
}

inline std::uint32_t bit_closure(const std::uint32_t* next, std::uint32_t start) {
  std::uint32_t seen = start;
  for (;;) {
    std::uint32_t grown = seen;
    for (std::uint32_t rest = seen; rest != 0; rest &= rest - 1) grown |= next[std::countr_zero(rest)];
    if (grown == seen) return seen;
    seen = grown;
  }
}

}  // namespace detail

/// Calls fn(const Digraph&) for every digraph on n vertices with m arcs.
template <class Fn>
void enumerate_digraphs(std::size_t n, std::size_t m, bool loop_free, Fn&& fn) {
  const auto universe = arc_universe(n, loop_free);
  detail::check_census_size(n, universe.size(), m);
  detail::for_each_subset(universe.size(), m, [&](std::uint64_t mask) {
    std::vector<Arc> arcs;
    arcs.reserve(m);
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) arcs.push_back(universe[std::countr_zero(rest)]);
    fn(Digraph(n, std::move(arcs), !loop_free));
  });
}

/// Exhaustive census over all m-subsets of the arc universe (n <= 5).
inline CensusResult brute_force_census(std::size_t n, std::size_t m, bool loop_free = false) {
  detail::require(n >= 1, "brute_force_census: n must be positive");
  const auto universe = arc_universe(n, loop_free);
  detail::check_census_size(n, universe.size(), m);

  CensusResult result;
  result.n = n;
  result.m = m;
  result.loop_free = loop_free;
  std::uint64_t total = 0;
  std::uint64_t strong = 0;
  std::uint64_t dicore = 0;
  std::vector<std::uint64_t> by_min(36, 0);  // [min_out * 6 + min_in]
  const std::uint32_t all = (std::uint32_t{1} << n) - 1;

  detail::for_each_subset(universe.size(), m, [&](std::uint64_t mask) {
    std::uint32_t out[5] = {};
    std::uint32_t in[5] = {};
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const Arc& a = universe[std::countr_zero(rest)];
      out[a.tail] |= std::uint32_t{1} << a.head;
      in[a.head] |= std::uint32_t{1} << a.tail;
    }
    ++total;
    int min_out = 6;
    int min_in = 6;
    for (std::size_t v = 0; v < n; ++v) {
      min_out = std::min(min_out, std::popcount(out[v]));
      min_in = std::min(min_in, std::popcount(in[v]));
    }
    if (min_out >= 1 && min_in >= 1) ++dicore;
    ++by_min[static_cast<std::size_t>(min_out * 6 + min_in)];
    if (detail::bit_closure(out, 1) == all && detail::bit_closure(in, 1) == all) ++strong;
  });

  result.total = total;
  result.strongly_connected = strong;
  result.dicore = dicore;
  for (int kp = 1; kp <= static_cast<int>(n); ++kp) {
    for (int km = 1; km <= static_cast<int>(n); ++km) {
      std::uint64_t count = 0;
      for (int mo = kp; mo <= 5; ++mo) {
        for (int mi = km; mi <= 5; ++mi) count += by_min[static_cast<std::size_t>(mo * 6 + mi)];
      }
      result.kdicore[{kp, km}] = count;
    }
  }
  return result;
}

}  // namespace scd
