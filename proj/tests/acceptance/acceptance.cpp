// Acceptance suite: one PASS/FAIL line per criterion. Tolerances, seeds and
// time budgets are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <scdigraph/scdigraph.hpp>

#include "../oracles.hpp"

namespace {

namespace tol {
constexpr double identity = 1e-10;
constexpr double dicore_rel_error_at_160 = 0.10;
constexpr double local_clt_dense = 0.05;   // (n, m) = (1e4, 2e4)
constexpr double local_clt_sparse = 0.10;  // (n, m) = (1e3, 1100)
constexpr double sigmas = 3.0;
constexpr double simple_slack = 0.01;
constexpr double strong_slack = 0.01;
constexpr double heart_slack = 0.02;
constexpr double chi_square_p = 0.001;
}  // namespace tol

namespace seed {
constexpr std::uint64_t simple = 20240601;
constexpr std::uint64_t strong = 20240602;
constexpr std::uint64_t strong_loopfree = 20240603;
constexpr std::uint64_t heart = 20240604;
constexpr std::uint64_t uniformity = 20240605;
}  // namespace seed

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double rel_error(double log_asymptotic, const scd::BigInt& exact) {
  return std::abs(std::exp(log_asymptotic - scd::log_big(exact)) - 1.0);
}

Outcome oracle_equivalence() {
  std::size_t compared = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = 0; m <= n * n; ++m) {
      if (scd::ie_dicore_count(n, m) != scd::brute_force_census(n, m).dicore) {
        return {false, fmt("loops allowed, n=%zu m=%zu differs", n, m)};
      }
      ++compared;
    }
    for (std::size_t m = 0; m <= n * n - n; ++m) {
      if (scd::ie_dicore_count_loopfree(n, m) != scd::brute_force_census(n, m, true).dicore) {
        return {false, fmt("loop-free, n=%zu m=%zu differs", n, m)};
      }
      ++compared;
    }
  }
  return {true, fmt("%zu (n, m, mode) cases equal", compared)};
}

Outcome small_values() {
  struct Case {
    const char* label;
    scd::BigInt got;
    int expected;
  };
  const std::vector<Case> cases = {
      {"S(2,2)", scd::brute_force_census(2, 2).strongly_connected, 1},
      {"S(2,3)", scd::brute_force_census(2, 3).strongly_connected, 2},
      {"S(2,4)", scd::brute_force_census(2, 4).strongly_connected, 1},
      {"S(3,3)", scd::brute_force_census(3, 3).strongly_connected, 2},
      {"dicore(3,3)", scd::brute_force_census(3, 3).dicore, 6},
      {"loop-free dicore(3,3)", scd::brute_force_census(3, 3, true).dicore, 2},
  };
  std::string detail;
  bool pass = true;
  for (const auto& c : cases) {
    pass = pass && c.got == c.expected;
    detail += std::string(detail.empty() ? "" : ", ") + c.label + "=" + c.got.str();
  }
  return {pass, detail};
}

Outcome dicore_convergence() {
  const std::vector<std::size_t> ns = {20, 40, 80, 160};
  std::vector<double> loopy;
  std::vector<double> loopfree;
  for (std::size_t n : ns) {
    const std::size_t m = 2 * n;
    loopy.push_back(rel_error(scd::log_count_dicore(n, m).log_value, scd::ie_dicore_count(n, m)));
    loopfree.push_back(
        rel_error(scd::log_count_kdicore_loopfree(n, m, 1, 1).log_value, scd::ie_dicore_count_loopfree(n, m)));
  }
  const auto decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (!(v[i] < v[i - 1])) return false;
    }
    return true;
  };
  const bool pass = decreasing(loopy) && decreasing(loopfree) && loopy.back() <= tol::dicore_rel_error_at_160 &&
                    loopfree.back() <= tol::dicore_rel_error_at_160;
  return {pass, fmt("loops %.4f %.4f %.4f %.4f; loop-free %.4f %.4f %.4f %.4f", loopy[0], loopy[1], loopy[2],
                    loopy[3], loopfree[0], loopfree[1], loopfree[2], loopfree[3])};
}

Outcome algebraic_identities() {
  double worst = 0.0;
  const auto track = [&](double got, double expected) { worst = std::max(worst, std::abs(got - expected)); };
  const std::vector<std::pair<std::size_t, std::size_t>> grid = {
      {1000, 2000}, {100, 150}, {50, 400}, {10000, 10100}, {7, 9}, {300, 1234}};
  for (auto [n, m] : grid) {
    const double c = static_cast<double>(m) / static_cast<double>(n);
    const double l = scd::solve_lambda(c, 1).lambda;
    const double t1 = scd::log_count_strong(n, m).log_value;
    const double t2 = scd::log_count_dicore(n, m).log_value;
    const double t3 = scd::log_count_kdicore(n, m, 1, 1).log_value;
    const double t4 = scd::log_count_strong_loopfree(n, m).log_value;
    const double t5 = scd::log_count_kdicore_loopfree(n, m, 1, 1).log_value;
    const double one_minus = -std::expm1(-l);
    track(t1 - t2, std::log(scd::phi(l)));
    track(t4 - t1, -c * one_minus * one_minus);
    track(t5 - t3, -c);
    track(t3, t2);
  }
  for (double c : {1.2, 2.0, 5.0}) {
    const double l = scd::solve_lambda(c, 1).lambda;
    for (bool lf : {false, true}) track(std::exp(-scd::mu(c, lf)), scd::phi(l, lf));
  }
  return {worst <= tol::identity, fmt("max deviation %.3e", worst)};
}

Outcome local_clt_agreement() {
  const auto check = [](std::size_t n, std::size_t m) {
    const double exact = scd::sum_prob_exact(n, m, scd::solve_lambda(static_cast<double>(m) / n, 1)).probability;
    return exact / scd::local_clt(n, m, 1) - 1.0;
  };
  const double dense = check(10000, 20000);
  const double sparse = check(1000, 1100);
  const bool pass = std::abs(dense) <= tol::local_clt_dense && std::abs(sparse) <= tol::local_clt_sparse;
  return {pass, fmt("relative difference %.2e at (1e4, 2e4), %.2e at (1e3, 1100)", dense, sparse)};
}

Outcome simple_fraction() {
  const auto r = scd::mc_simple_probability(1000, 2000, 100000, {seed::simple, 1, false});
  const double bound = tol::sigmas * r.stderr_ + tol::simple_slack;
  return {std::abs(r.estimate - r.theory) <= bound,
          fmt("estimate %.4f, theory %.4f, |diff| %.4f <= %.4f", r.estimate, r.theory,
              std::abs(r.estimate - r.theory), bound)};
}

Outcome strong_constant() {
  std::string detail;
  bool pass = true;
  for (bool lf : {false, true}) {
    const auto r = scd::mc_strong_probability(1000, 2000, 10000, {lf ? seed::strong_loopfree : seed::strong, 1, lf});
    const double bound = tol::sigmas * r.stderr_ + tol::strong_slack;
    pass = pass && std::abs(r.estimate - r.theory) <= bound;
    detail += fmt("%s%s estimate %.4f, theory %.4f, |diff| %.4f <= %.4f", detail.empty() ? "" : "; ",
                  lf ? "loop-free" : "loops", r.estimate, r.theory, std::abs(r.estimate - r.theory), bound);
  }
  return {pass, detail};
}

Outcome heart_constant() {
  const auto r = scd::mc_heart_strong(30000, 31000, 2000, {seed::heart, 1, false});
  const double bound = tol::sigmas * r.stderr_ + tol::heart_slack;
  return {std::abs(r.estimate - r.theory) <= bound,
          fmt("estimate %.4f, theory %.4f, |diff| %.4f <= %.4f; gamma rate %.3f, s-cycle share of failures %.3f",
              r.estimate, r.theory, std::abs(r.estimate - r.theory), bound, r.detail("gamma_rate"),
              r.detail("scycle_failure_ratio"))};
}

std::uint64_t arc_mask(const scd::Digraph& g) {
  std::uint64_t k = 0;
  for (const auto& a : g.arcs()) k |= std::uint64_t{1} << (a.tail * g.vertex_count() + a.head);
  return k;
}

Outcome sampler_uniformity() {
  std::string detail;
  bool pass = true;
  std::uint64_t task = 0;
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{3, 4}, {2, 2}}) {
    for (bool lf : {false, true}) {
      std::map<std::uint64_t, std::uint64_t> counts;
      scd::enumerate_digraphs(n, m, lf, [&](const scd::Digraph& g) {
        if (scd::oracle::is_dicore(g)) counts[arc_mask(g)] = 0;
      });
      scd::rng_type rng = scd::make_rng(seed::uniformity, task++);
      bool outside = false;
      for (int i = 0; i < 100000; ++i) {
        const auto it = counts.find(arc_mask(scd::sample_dicore(n, m, 1, 1, lf, rng)));
        if (it == counts.end()) {
          outside = true;
          break;
        }
        ++it->second;
      }
      std::vector<std::uint64_t> observed;
      for (const auto& [k, c] : counts) observed.push_back(c);
      const std::vector<double> prob(observed.size(), 1.0 / static_cast<double>(observed.size()));
      const auto chi = scd::chi_square_test(observed, prob);
      pass = pass && !outside && chi.p_value > tol::chi_square_p;
      detail += fmt("%s(%zu,%zu,%s) support %zu p=%.3f", detail.empty() ? "" : "; ", n, m, lf ? "loop-free" : "loops",
                    observed.size(), outside ? 0.0 : chi.p_value);
    }
  }
  return {pass, detail};
}

Outcome structural_equivalences() {
  std::mt19937_64 rng(seed::uniformity);
  std::size_t dicores = 0;
  std::size_t prehearts = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t m = n; m <= n * n; ++m) {
      bool ok = true;
      std::string why;
      scd::enumerate_digraphs(n, m, false, [&](const scd::Digraph& g) {
        if (!ok || !scd::oracle::is_dicore(g)) return;
        ++dicores;
        const bool strong = scd::is_strongly_connected(g);
        bool sink = false;
        bool source = false;
        for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
          const auto c = scd::classify_s_set(g, scd::oracle::members(mask));
          sink = sink || c.is_sink_set();
          source = source || c.is_source_set();
        }
        if (strong == sink || strong == source) {
          ok = false;
          why = "sink/source-set characterization";
        }
        if (scd::oracle::as_sets(scd::enumerate_s_cycles(g, n)) != scd::oracle::brute_s_cycles(g, n)) {
          ok = false;
          why = "s-cycle enumeration";
        }
        if (scd::oracle::is_preheart(g)) {
          ++prehearts;
          const auto h = scd::heart(g);
          if (strong != scd::is_strongly_connected(h.graph)) {
            ok = false;
            why = "heart strong connectivity";
          }
          if (!(scd::oracle::suppress_in_order(g, rng) == h.graph)) {
            ok = false;
            why = "heart suppression order";
          }
        }
      });
      if (!ok) return {false, fmt("n=%zu m=%zu: %s", n, m, why.c_str())};
    }
  }
  return {true, fmt("%zu dicores, %zu prehearts checked", dicores, prehearts)};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> only;
  std::vector<int> skip;
  CLI::App app{"acceptance criteria"};
  app.add_option("--only", only, "run only these criteria")->delimiter(',');
  app.add_option("--skip", skip, "skip these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "exact oracle equivalence (n <= 4)", 60, oracle_equivalence},
      {2, "small exact values", 5, small_values},
      {3, "dicore count convergence at c = 2", 30, dicore_convergence},
      {4, "algebraic identities", 1, algebraic_identities},
      {5, "local limit for the degree sum", 60, local_clt_agreement},
      {6, "simple-pairing fraction", 120, simple_fraction},
      {7, "strong-connectivity constant", 900, strong_constant},
      {8, "heart constant 1/9", 900, heart_constant},
      {9, "sampler uniformity", 120, sampler_uniformity},
      {10, "structural equivalences (n <= 4)", 120, structural_equivalences},
  };

  const auto selected = [&](int id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) return false;
    return std::find(skip.begin(), skip.end(), id) == skip.end();
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = outcome.pass && in_time;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << outcome.detail
              << fmt(" (%.1f s of %.0f s%s)", seconds, c.budget_seconds, in_time ? "" : ", over budget") << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
