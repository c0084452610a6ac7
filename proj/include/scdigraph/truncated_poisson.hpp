#pragma once

// k-truncated Poisson family TPo_k(lambda): P(Y = i) = lambda^i / (f_k(lambda) i!)
// for i >= k, where f_k(lambda) = sum_{i >= max(k,0)} lambda^i / i!.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "rng.hpp"

namespace scd {

/// Natural log of f_k(lambda). Finite for every lambda > 0, including the
/// range where f_k itself overflows a double.
inline double log_f_k(int k, double lambda) {
  detail::require(lambda > 0.0 && std::isfinite(lambda), "f_k: lambda must be positive and finite");
  if (k <= 0) return lambda;
  const double log_lambda = std::log(lambda);
  if (lambda <= 30.0 || k > lambda) {
    // sum_{j>=0} lambda^j k!/(k+j)!, factored out of the leading term.
    double term = 1.0;
    double partial = 1.0;
    for (int i = k + 1;; ++i) {
      term *= lambda / i;
      partial += term;
      if (i > lambda && term / partial < 1e-18) break;
    }
    return k * log_lambda - std::lgamma(k + 1.0) + std::log(partial);
  }
  // e^lambda minus its first k series terms, each term formed in log space.
  double head = 0.0;
  for (int i = 0; i < k; ++i) {
    head += std::exp(i * log_lambda - std::lgamma(i + 1.0) - lambda);
  }
  return lambda + std::log1p(-head);
}

inline double f_k(int k, double lambda) { return std::exp(log_f_k(k, lambda)); }

/// Mean of TPo_k(lambda): lambda f_{k-1}(lambda) / f_k(lambda).
inline double tpo_mean(int k, double lambda) {
  if (k <= 0) return lambda;
  return lambda * std::exp(log_f_k(k - 1, lambda) - log_f_k(k, lambda));
}

/// eta = lambda f_{k-2}(lambda) / f_{k-1}(lambda), so that E[Y(Y-1)] = eta c
/// and Var Y = c (1 + eta - c). Equals lambda when k <= 1.
inline double tpo_eta(int k, double lambda) {
  if (k <= 1) return lambda;
  return lambda * std::exp(log_f_k(k - 2, lambda) - log_f_k(k - 1, lambda));
}

struct TPoModel {
  int k = 0;
  double lambda = 1.0;
  double c = 1.0;
  double eta = 1.0;

  double variance() const { return c * (1.0 + eta - c); }
};

inline TPoModel make_tpo(int k, double lambda) {
  detail::require(k >= 0, "TPoModel: k must be nonnegative");
  detail::require(lambda > 0.0 && std::isfinite(lambda), "TPoModel: lambda must be positive");
  return TPoModel{k, lambda, tpo_mean(k, lambda), tpo_eta(k, lambda)};
}

inline double log_pmf(const TPoModel& model, std::size_t i) {
  if (static_cast<long long>(i) < model.k) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(i) * std::log(model.lambda) - std::lgamma(static_cast<double>(i) + 1.0) -
         log_f_k(model.k, model.lambda);
}

inline double pmf(const TPoModel& model, std::size_t i) {
  if (static_cast<long long>(i) < model.k) return 0.0;
  return std::exp(log_pmf(model, i));
}

/// P(Y >= j) = f_j / f_k for j >= k.
inline double tail_probability(const TPoModel& model, std::size_t j) {
  if (static_cast<long long>(j) <= model.k) return 1.0;
  return std::exp(log_f_k(static_cast<int>(j), model.lambda) - log_f_k(model.k, model.lambda));
}

/// Unique lambda > 0 whose TPo_k mean equals c. Requires c > k.
inline TPoModel solve_lambda(double c, int k) {
  detail::require(k >= 0, "solve_lambda: k must be nonnegative");
  detail::require(std::isfinite(c) && c > k,
                  "solve_lambda: need c > k (got c=" + std::to_string(c) + ", k=" + std::to_string(k) + ")");
  if (k == 0) return make_tpo(0, c);

  double lo = 1e-12;
  double hi = std::max(2.0 * c, 50.0);
  while (tpo_mean(k, lo) >= c && lo > 1e-300) lo *= 1e-3;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (tpo_mean(k, mid) < c ? lo : hi) = mid;
  }
  double lambda = 0.5 * (lo + hi);
  // dc/dlambda = Var(Y) / lambda.
  for (int it = 0; it < 5; ++it) {
    const TPoModel cur = make_tpo(k, lambda);
    const double slope = cur.variance() / lambda;
    if (!(slope > 0.0)) break;
    const double next = lambda - (cur.c - c) / slope;
    if (!(next > 0.0) || !std::isfinite(next)) break;
    if (std::abs(tpo_mean(k, next) - c) >= std::abs(cur.c - c)) break;
    lambda = next;
  }
  return make_tpo(k, lambda);
}

/// One draw from TPo_k(lambda).
inline std::size_t sample(const TPoModel& model, rng_type& rng) {
  const auto k = static_cast<std::size_t>(model.k);
  if (model.lambda > 2.0 * model.k + 10.0) {
    std::poisson_distribution<long long> poisson(model.lambda);
    for (;;) {
      const auto y = static_cast<std::size_t>(poisson(rng));
      if (y >= k) return y;
    }
  }
  const double u = uniform01(rng);
  std::size_t i = k;
  double p = pmf(model, k);
  double cumulative = p;
  while (u >= cumulative) {
    ++i;
    p *= model.lambda / static_cast<double>(i);
    if (p == 0.0) break;
    cumulative += p;
  }
  return i;
}

/// Paired out/in degree lists. Both sum to m.
struct DegreeSequence {
  std::vector<std::size_t> out_degrees;
  std::vector<std::size_t> in_degrees;
  std::size_t m = 0;

  std::size_t vertex_count() const { return out_degrees.size(); }

  bool is_valid(std::size_t min_out = 0, std::size_t min_in = 0) const {
    if (out_degrees.size() != in_degrees.size()) return false;
    std::size_t so = 0;
    std::size_t si = 0;
    for (std::size_t i = 0; i < out_degrees.size(); ++i) {
      if (out_degrees[i] < min_out || in_degrees[i] < min_in) return false;
      so += out_degrees[i];
      si += in_degrees[i];
    }
    return so == m && si == m;
  }
};

struct ConditionedSamplerOptions {
  // Overrides the internal lambda; any positive value yields the same law.
  std::optional<double> lambda;
  std::uint64_t max_rejections = 1'000'000;
  std::size_t dp_fallback_max_n = 500;
  bool force_dp = false;
};

namespace detail {

// Exact sequential sampler: backward tables of P(Y_j + ... + Y_{n-1} = s).
inline std::vector<std::size_t> sample_conditioned_dp(std::size_t n, std::size_t m, const TPoModel& model,
                                                      rng_type& rng) {
  const auto k = static_cast<std::size_t>(model.k);
  if (static_cast<double>(n) * static_cast<double>(m + 1) > 5e7) {
    throw resource_error("conditioned DP sampler: table of " + std::to_string(n) + "x" + std::to_string(m + 1) +
                         " entries is too large");
  }
  const std::size_t max_value = m - (n - 1) * k;
  std::vector<double> weight(max_value + 1, 0.0);
  for (std::size_t i = k; i <= max_value; ++i) weight[i] = pmf(model, i);

  // rows[j][s] proportional to P(Y_j + ... + Y_{n-1} = s); each row rescaled to max 1.
  std::vector<std::vector<double>> rows(n + 1, std::vector<double>(m + 1, 0.0));
  rows[n][0] = 1.0;
  for (std::size_t j = n; j-- > 0;) {
    const auto& next = rows[j + 1];
    auto& row = rows[j];
    double peak = 0.0;
    for (std::size_t s = 0; s <= m; ++s) {
      double acc = 0.0;
      for (std::size_t y = k; y <= std::min(s, max_value); ++y) acc += weight[y] * next[s - y];
      row[s] = acc;
      peak = std::max(peak, acc);
    }
    if (peak > 0.0) {
      for (auto& v : row) {
        v /= peak;
        if (v < 1e-300) v = 0.0;
      }
    }
  }

  std::vector<std::size_t> out(n);
  std::size_t remaining = m;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& next = rows[j + 1];
    double total = 0.0;
    for (std::size_t y = k; y <= std::min(remaining, max_value); ++y) total += weight[y] * next[remaining - y];
    double u = uniform01(rng) * total;
    std::size_t pick = k;
    for (std::size_t y = k; y <= std::min(remaining, max_value); ++y) {
      const double w = weight[y] * next[remaining - y];
      if (w <= 0.0) continue;
      pick = y;
      if (u < w) break;
      u -= w;
    }
    out[j] = pick;
    remaining -= pick;
  }
  return out;
}

}  // namespace detail

/// n values, each >= k, summing to m, distributed as i.i.d. TPo_k conditioned
/// on the total. Rejection over the value histogram (a multinomial draw per
/// attempt), with an exact DP fallback for small n.
inline std::vector<std::size_t> sample_conditioned_sequence(std::size_t n, std::size_t m, int k, rng_type& rng,
                                                            const ConditionedSamplerOptions& options = {}) {
  detail::require(n >= 1, "sample_conditioned_sequence: n must be positive");
  detail::require(k >= 0, "sample_conditioned_sequence: k must be nonnegative");
  const auto ku = static_cast<std::size_t>(k);
  if (m < ku * n) {
    throw domain_error("sample_conditioned_sequence: infeasible, m=" + std::to_string(m) + " < k*n=" +
                       std::to_string(ku * n));
  }
  if (m == ku * n) return std::vector<std::size_t>(n, ku);

  const double lambda = options.lambda ? *options.lambda
                                       : solve_lambda(static_cast<double>(m) / static_cast<double>(n), k).lambda;
  const TPoModel model = make_tpo(k, lambda);
  if (options.force_dp) return detail::sample_conditioned_dp(n, m, model, rng);

  // P(Y = i | Y >= i), grown on demand.
  std::vector<double> hazard;
  const auto hazard_at = [&](std::size_t i) {
    const std::size_t idx = i - ku;
    while (hazard.size() <= idx) {
      const auto v = static_cast<int>(ku + hazard.size());
      hazard.push_back(std::exp(v * std::log(lambda) - std::lgamma(v + 1.0) - log_f_k(v, lambda)));
    }
    return hazard[idx];
  };

  std::vector<std::pair<std::size_t, std::size_t>> histogram;
  const std::uint64_t hard_cap = options.max_rejections * 100;
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt >= options.max_rejections) {
      if (n <= options.dp_fallback_max_n) return detail::sample_conditioned_dp(n, m, model, rng);
      if (attempt >= hard_cap) {
        throw resource_error("sample_conditioned_sequence: no acceptance after " + std::to_string(attempt) +
                             " attempts");
      }
    }
    histogram.clear();
    std::size_t remaining = n;
    std::size_t total = 0;
    bool rejected = false;
    for (std::size_t value = ku; remaining > 0; ++value) {
      const double q = std::min(1.0, hazard_at(value));
      std::size_t count = remaining;
      if (q < 1.0) {
        std::binomial_distribution<std::size_t> binom(remaining, q);
        count = binom(rng);
      }
      if (count > 0) {
        histogram.emplace_back(value, count);
        total += value * count;
        remaining -= count;
      }
      if (total + remaining * (value + 1) > m) {
        rejected = true;
        break;
      }
    }
    if (rejected || total != m) continue;

    std::vector<std::size_t> out;
    out.reserve(n);
    for (const auto& [value, count] : histogram) out.insert(out.end(), count, value);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
  }
}

struct ExactSumProbability {
  double probability = 0.0;
  // Set when the answer itself fell below the 1e-300 flush threshold.
  bool underflow = false;
};

/// Exact P(Y_1 + ... + Y_n = m) for i.i.d. Y_i ~ model, by DP convolution.
/// Per-variable support is cut where the remaining tail mass drops below 1e-16.
inline ExactSumProbability sum_prob_exact(std::size_t n, std::size_t m, const TPoModel& model) {
  detail::require(n >= 1, "sum_prob_exact: n must be positive");
  const auto k = static_cast<std::size_t>(model.k);
  if (m < k * n) return {};

  const std::size_t max_value = m - (n - 1) * k;
  std::vector<double> weight;
  for (std::size_t i = k; i <= max_value; ++i) {
    weight.push_back(pmf(model, i));
    if (i > model.lambda && tail_probability(model, i + 1) < 1e-16) break;
  }

  std::vector<double> cur(m + 1, 0.0);
  std::vector<double> next(m + 1, 0.0);
  cur[0] = 1.0;
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool flushed = false;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t cap = m - (n - j) * k;
    const std::size_t new_lo = lo + k;
    const std::size_t new_hi = std::min(cap, hi + k + weight.size() - 1);
    if (new_lo > new_hi) return {0.0, flushed};
    std::fill(next.begin() + static_cast<std::ptrdiff_t>(new_lo),
              next.begin() + static_cast<std::ptrdiff_t>(new_hi) + 1, 0.0);
    for (std::size_t s = lo; s <= hi; ++s) {
      const double base = cur[s];
      if (base == 0.0) continue;
      const std::size_t limit = std::min(weight.size(), new_hi + 1 - (s + k));
      double* dst = next.data() + s + k;
      for (std::size_t y = 0; y < limit; ++y) dst[y] += base * weight[y];
    }
    lo = new_lo;
    hi = new_hi;
    while (lo <= hi && next[lo] < 1e-300) {
      if (next[lo] != 0.0) flushed = true;
      next[lo++] = 0.0;
    }
    while (hi > lo && next[hi] < 1e-300) {
      if (next[hi] != 0.0) flushed = true;
      next[hi--] = 0.0;
    }
    std::swap(cur, next);
    if (lo > hi || cur[lo] == 0.0) return {0.0, flushed};
  }
  const double p = (m >= lo && m <= hi) ? cur[m] : 0.0;
  return {p, p == 0.0 && flushed};
}

}  // namespace scd
