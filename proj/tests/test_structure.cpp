#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include <scdigraph/exact_oracles.hpp>
#include <scdigraph/structure.hpp>

#include "oracles.hpp"

namespace {

using scd::Arc;
using scd::Digraph;
using scd::MultiDigraph;
using scd::oracle::as_sets;
using scd::oracle::brute_s_cycles;
using scd::oracle::is_dicore;
using scd::oracle::is_preheart;
using scd::oracle::members;
using scd::oracle::suppress_in_order;

Digraph cycle(std::size_t n) {
  std::vector<Arc> arcs;
  for (std::size_t v = 0; v < n; ++v) arcs.push_back({v, (v + 1) % n});
  return Digraph(n, arcs);
}

// ---------------------------------------------------------------------------
// Digraph types and edge-list I/O

TEST(Digraph, RejectsDuplicatesLoopsAndRange) {
  EXPECT_THROW(Digraph(2, {{0, 1}, {0, 1}}), scd::domain_error);
  EXPECT_THROW(Digraph(2, {{0, 0}}, false), scd::domain_error);
  EXPECT_THROW(Digraph(2, {{0, 2}}), scd::domain_error);
  EXPECT_NO_THROW(Digraph(2, {{0, 0}}, true));
  EXPECT_THROW(MultiDigraph(1, {{0, 1}}), scd::domain_error);
}

TEST(Digraph, MultiEqualityIgnoresOrder) {
  const MultiDigraph a(2, {{0, 1}, {1, 0}, {0, 1}});
  const MultiDigraph b(2, {{0, 1}, {0, 1}, {1, 0}});
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.has_multiple_arcs());
  EXPECT_FALSE(a.has_loops());
  EXPECT_NE(a, MultiDigraph(2, {{0, 1}, {1, 0}, {1, 0}}));
}

TEST(EdgeList, RoundTrip) {
  const Digraph g(4, {{0, 1}, {1, 2}, {2, 0}, {3, 3}, {2, 3}, {3, 1}});
  std::stringstream ss;
  scd::write_edge_list(ss, g);
  EXPECT_EQ(ss.str().substr(0, 12), "# 4 6 loops\n");
  EXPECT_EQ(scd::read_digraph(ss), g);

  const Digraph h(3, {{0, 1}, {1, 2}, {2, 0}}, false);
  std::stringstream ts;
  scd::write_edge_list(ts, h);
  const Digraph back = scd::read_digraph(ts);
  EXPECT_EQ(back, h);
  EXPECT_FALSE(back.allow_loops());
}

TEST(EdgeList, MultiRoundTrip) {
  const MultiDigraph g(2, {{0, 1}, {0, 1}, {1, 1}, {1, 0}});
  std::stringstream ss;
  scd::write_edge_list(ss, g);
  EXPECT_EQ(scd::read_multidigraph(ss), g);
}

TEST(EdgeList, ParseErrors) {
  const auto read = [](const std::string& text) {
    std::istringstream is(text);
    return scd::read_digraph(is);
  };
  EXPECT_THROW(read(""), scd::parse_error);
  EXPECT_THROW(read("3 1\n0 1\n"), scd::parse_error);
  EXPECT_THROW(read("# 3\n"), scd::parse_error);
  EXPECT_THROW(read("# 3 1 maybe\n0 1\n"), scd::parse_error);
  EXPECT_THROW(read("# 3 1\n0 3\n"), scd::parse_error);
  EXPECT_THROW(read("# 3 1\n-1 2\n"), scd::parse_error);
  EXPECT_THROW(read("# 3 1\n0 1 2\n"), scd::parse_error);
  EXPECT_THROW(read("# 3 1\nzero one\n"), scd::parse_error);
  EXPECT_THROW(read("# 3 2\n0 1\n0 1\n"), scd::parse_error);
  EXPECT_THROW(read("# 3 1 noloops\n1 1\n"), scd::parse_error);
  EXPECT_THROW(read("# 3 2\n0 1\n"), scd::parse_error);
  EXPECT_NO_THROW(read("# 3 1\n0 1\n"));
  std::istringstream multi("# 2 2\n0 1\n0 1\n");
  EXPECT_NO_THROW(scd::read_multidigraph(multi));
}

// ---------------------------------------------------------------------------
// Strong connectivity and sink-sets

TEST(StrongConnectivity, Examples) {
  EXPECT_TRUE(scd::is_strongly_connected(cycle(3)));
  EXPECT_FALSE(scd::is_strongly_connected(Digraph(3, {{0, 1}, {1, 2}})));
  EXPECT_TRUE(scd::is_strongly_connected(Digraph(1, {{0, 0}})));
  EXPECT_TRUE(scd::is_strongly_connected(MultiDigraph(2, {{0, 1}, {0, 1}, {1, 0}})));
}

TEST(SinkSet, Examples) {
  const Digraph g(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 3}});
  EXPECT_EQ(scd::find_sink_set_from(g, 0), (std::vector<std::size_t>{0, 1, 2}));

  const Digraph complete(3, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
  for (std::size_t v = 0; v < 3; ++v) EXPECT_EQ(scd::find_sink_set_from(complete, v).size(), 3u);

  const Digraph h(2, {{0, 1}, {1, 1}});
  EXPECT_EQ(scd::find_sink_set_from(h, 0), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(scd::find_sink_set_from(h, 1), (std::vector<std::size_t>{1}));
}

TEST(ClassifySSet, Examples) {
  const Digraph g(3, {{0, 1}, {1, 0}, {1, 2}, {2, 2}});
  const auto c = scd::classify_s_set(g, {2});
  EXPECT_EQ(c.sink, scd::SSetKind::plain);
  EXPECT_FALSE(c.is_source_set());

  const Digraph strong(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}});
  for (std::uint32_t mask = 1; mask < 7; ++mask) EXPECT_FALSE(scd::classify_s_set(strong, members(mask)).is_s_set());

  const Digraph h(3, {{0, 1}, {0, 2}, {1, 0}, {2, 0}, {1, 2}});
  EXPECT_FALSE(scd::classify_s_set(h, {1, 2}).is_s_set());

  EXPECT_THROW(scd::classify_s_set(g, {}), scd::domain_error);
  EXPECT_THROW(scd::classify_s_set(g, {0, 1, 2}), scd::domain_error);
}

TEST(ClassifySSet, ComplexSinkSet) {
  // {1, 2} has no leaving arc; vertex 1 has outdegree 2.
  const Digraph g(3, {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 1}});
  const auto c = scd::classify_s_set(g, {1, 2});
  EXPECT_EQ(c.sink, scd::SSetKind::complex);
  EXPECT_FALSE(c.is_source_set());
  EXPECT_EQ(scd::classify_s_set(g, {0}).source, scd::SSetKind::plain);
  EXPECT_TRUE(scd::classify_s_set(g, {1, 2}).is_s_set());
}

// Exhaustive: on dicores with n <= 4, strongly connected iff no sink-set iff
// no source-set, and find_sink_set_from covers V from every v iff strong.
TEST(StrongConnectivity, SinkSetCharacterizationExhaustive) {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = n; m <= n * n; ++m) {
      scd::enumerate_digraphs(n, m, false, [&](const Digraph& g) {
        if (!is_dicore(g)) return;
        const bool strong = scd::is_strongly_connected(g);
        bool sink = false;
        bool source = false;
        for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
          const auto c = scd::classify_s_set(g, members(mask));
          sink = sink || c.is_sink_set();
          source = source || c.is_source_set();
        }
        ASSERT_EQ(strong, !sink);
        ASSERT_EQ(strong, !source);
        bool covers = true;
        for (std::size_t v = 0; v < n; ++v) covers = covers && scd::find_sink_set_from(g, v).size() == n;
        ASSERT_EQ(strong, covers);
        ++checked;
      });
    }
  }
  EXPECT_GT(checked, 1000u);
}

// ---------------------------------------------------------------------------
// s-cycles

TEST(SCycles, Examples) {
  const auto single = scd::enumerate_s_cycles(cycle(4), 10);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].kind, scd::SCycleKind::both);
  EXPECT_EQ(single[0].vertices, (std::vector<std::size_t>{0, 1, 2, 3}));

  EXPECT_TRUE(scd::enumerate_s_cycles(Digraph(3, {{0, 1}, {1, 0}, {0, 2}, {2, 0}}), 10).empty());

  const Digraph g(3, {{0, 1}, {1, 0}, {2, 0}, {1, 2}, {2, 1}});
  EXPECT_EQ(as_sets(scd::enumerate_s_cycles(g, 10)), brute_s_cycles(g, 10));

  EXPECT_THROW(scd::enumerate_s_cycles(Digraph(2, {{0, 1}}), 3), scd::domain_error);
}

TEST(SCycles, KindsAndLoops) {
  // {2} is a loop with an in-arc (sink-cycle); {0, 1} receives no arc from
  // outside and has indegrees 1 (source-cycle).
  const Digraph g(3, {{0, 1}, {1, 0}, {1, 2}, {2, 2}});
  const auto cycles = scd::enumerate_s_cycles(g, 5);
  ASSERT_EQ(cycles.size(), 2u);
  EXPECT_EQ(cycles[0].vertices, (std::vector<std::size_t>{2}));
  EXPECT_EQ(cycles[0].kind, scd::SCycleKind::sink);
  EXPECT_EQ(cycles[1].vertices, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(cycles[1].kind, scd::SCycleKind::source);
  const auto no_loops = scd::enumerate_s_cycles(g, 5, false);
  ASSERT_EQ(no_loops.size(), 1u);
  EXPECT_EQ(no_loops[0].vertices.size(), 2u);
  EXPECT_EQ(scd::enumerate_s_cycles(g, 1).size(), 1u);

  const Digraph h(3, {{0, 1}, {1, 0}, {2, 1}, {2, 2}});
  const auto reversed = scd::enumerate_s_cycles(h, 5);
  ASSERT_EQ(reversed.size(), 2u);
  EXPECT_EQ(reversed[0].kind, scd::SCycleKind::source);
  EXPECT_EQ(reversed[1].kind, scd::SCycleKind::sink);
}

TEST(SCycles, MatchesSubsetBruteForceExhaustive) {
  std::size_t checked = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = n; m <= n * n; ++m) {
      scd::enumerate_digraphs(n, m, false, [&](const Digraph& g) {
        if (!is_dicore(g)) return;
        for (std::size_t len : {std::size_t{2}, n}) {
          ASSERT_EQ(as_sets(scd::enumerate_s_cycles(g, len)), brute_s_cycles(g, len));
        }
        ++checked;
      });
    }
  }
  // n = 5 dicores with few arcs, where s-cycles are common.
  for (std::size_t m = 5; m <= 7; ++m) {
    scd::enumerate_digraphs(5, m, false, [&](const Digraph& g) {
      if (!is_dicore(g)) return;
      ASSERT_EQ(as_sets(scd::enumerate_s_cycles(g, 5)), brute_s_cycles(g, 5));
      ++checked;
    });
  }
  EXPECT_GT(checked, 10000u);
}

TEST(SCycles, RotatedToSmallestVertex) {
  const Digraph g(4, {{3, 1}, {1, 2}, {2, 3}, {0, 0}, {0, 1}, {3, 0}});
  for (const auto& c : scd::enumerate_s_cycles(g, 4)) {
    EXPECT_EQ(c.vertices.front(), *std::min_element(c.vertices.begin(), c.vertices.end()));
  }
}

// ---------------------------------------------------------------------------
// Cycle components and hearts

TEST(CycleComponents, Examples) {
  const Digraph g(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 3}});
  EXPECT_EQ(scd::cycle_components(g).size(), 2u);
  EXPECT_TRUE(scd::cycle_components(Digraph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 2}})).empty());
  const auto loop = scd::cycle_components(Digraph(1, {{0, 0}}));
  ASSERT_EQ(loop.size(), 1u);
  EXPECT_EQ(loop[0], (std::vector<std::size_t>{0}));
}

TEST(Heart, Examples) {
  const auto h = scd::heart(Digraph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}));
  EXPECT_EQ(h.vertices, (std::vector<std::size_t>{1}));
  EXPECT_EQ(h.graph, MultiDigraph(1, {{0, 0}, {0, 0}}));
  EXPECT_EQ(static_cast<long long>(h.graph.arc_count()) - static_cast<long long>(h.graph.vertex_count()), 4 - 3);

  const Digraph dense(3, {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}});
  const auto same = scd::heart(dense);
  EXPECT_EQ(same.graph, dense.to_multi());

  EXPECT_THROW(scd::heart(cycle(4)), scd::domain_error);
  EXPECT_THROW(scd::heart(Digraph(2, {{0, 1}})), scd::domain_error);
}

TEST(Heart, OrderIndependentAndIdempotent) {
  std::mt19937_64 rng(8);
  std::size_t checked = 0;
  for (std::size_t m = 5; m <= 7; ++m) {
    scd::enumerate_digraphs(5, m, false, [&](const Digraph& g) {
      if (!is_preheart(g)) return;
      const auto h = scd::heart(g);
      ASSERT_EQ(suppress_in_order(g, rng), h.graph);
      ASSERT_EQ(h.graph.arc_count() - h.graph.vertex_count(), g.arc_count() - g.vertex_count());
      const auto again = scd::heart(h.graph);
      ASSERT_EQ(again.graph, h.graph);
      ++checked;
    });
  }
  EXPECT_GT(checked, 1000u);
}

TEST(Heart, StrongConnectivityPreservedExhaustive) {
  std::size_t checked = 0;
  const auto check = [&](const Digraph& g) {
    if (!is_preheart(g)) return;
    ASSERT_EQ(scd::is_strongly_connected(g), scd::is_strongly_connected(scd::heart(g).graph));
    ++checked;
  };
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = n; m <= n * n; ++m) scd::enumerate_digraphs(n, m, false, check);
  }
  for (std::size_t m = 5; m <= 7; ++m) scd::enumerate_digraphs(5, m, false, check);
  EXPECT_GT(checked, 10000u);
}

// ---------------------------------------------------------------------------
// Degree statistics

TEST(DegreeStats, CycleWithChord) {
  std::vector<Arc> arcs = cycle(5).arcs();
  arcs.push_back({0, 2});
  const auto s = scd::degree_stats(Digraph(5, arcs));
  EXPECT_EQ(s.r, 1);
  EXPECT_EQ(s.a11, 3u);
  EXPECT_EQ(s.a12, 1u);
  EXPECT_EQ(s.a21, 1u);
  EXPECT_EQ(s.a22, 0u);
  EXPECT_EQ(s.n_prime, 2u);
  EXPECT_EQ(s.m_prime, 3u);

  std::vector<Arc> with_loop = cycle(5).arcs();
  with_loop.push_back({3, 3});
  const auto t = scd::degree_stats(Digraph(5, with_loop));
  EXPECT_EQ(t.a22, 1u);
  EXPECT_EQ(t.a12 + t.a21, 0u);
  EXPECT_EQ(t.a11 + t.a12 + t.a21 + t.a22, 5u);
  EXPECT_EQ(static_cast<long long>(t.m_prime) - static_cast<long long>(t.n_prime), t.r);
}

TEST(DegreeStats, ZeroExcess) {
  const auto s = scd::degree_stats(cycle(6));
  EXPECT_EQ(s.r, 0);
  EXPECT_EQ(s.a11, 6u);
  EXPECT_EQ(s.n_prime, 0u);
  EXPECT_TRUE(s.gamma());
}

TEST(DegreeStats, RequiresDicore) { EXPECT_THROW(scd::degree_stats(Digraph(2, {{0, 1}})), scd::domain_error); }

}  // namespace
