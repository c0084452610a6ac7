#pragma once

// Log-space evaluators for the asymptotic counts of strongly connected
// digraphs and of digraphs with minimum in/out-degree constraints, plus the
// associated limiting constants.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <string>

#include "error.hpp"
#include "truncated_poisson.hpp"

namespace scd {

enum class CountForm {
  strong,               // strongly connected, loops allowed
  strong_sparse_limit,  // c -> 1 simplification
  strong_dense_limit,   // c -> infinity simplification
  dicore,               // min in/out-degree 1
  kdicore,              // min outdegree k+, min indegree k-
  strong_loopfree,
  kdicore_loopfree,
};

inline const char* to_string(CountForm f) {
  switch (f) {
    case CountForm::strong: return "strong";
    case CountForm::strong_sparse_limit: return "strong_sparse_limit";
    case CountForm::strong_dense_limit: return "strong_dense_limit";
    case CountForm::dicore: return "dicore";
    case CountForm::kdicore: return "kdicore";
    case CountForm::strong_loopfree: return "strong_loopfree";
    case CountForm::kdicore_loopfree: return "kdicore_loopfree";
  }
  return "?";
}

struct CountParams {
  std::size_t n = 0;
  std::size_t m = 0;
  int kplus = 1;
  int kminus = 1;
  double c = 0.0;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double eta_plus = 0.0;
  double eta_minus = 0.0;
};

/// A count held as its natural logarithm.
struct LogCount {
  double log_value = 0.0;
  CountForm form = CountForm::strong;
  CountParams params;
  // m > 3 n log n: the formula still evaluates but is outside m = O(n log n).
  bool outside_regime = false;

  double log10() const { return log_value / std::numbers::ln10; }

  /// "d.ddd×10^e"
  std::string scientific(int digits = 3) const {
    const double l10 = log10();
    double exponent = std::floor(l10);
    double mantissa = std::pow(10.0, l10 - exponent);
    const double unit = std::pow(10.0, digits);
    if (std::round(mantissa * unit) >= 10.0 * unit) {
      mantissa /= 10.0;
      exponent += 1.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f×10^%.0f", digits, mantissa, exponent);
    return buf;
  }
};

// ---------------------------------------------------------------------------
// Constants

/// log(e^x - 1), x > 0.
inline double log_expm1(double x) { return log_f_k(1, x); }

/// 1 + eta - c for the model, computed without cancellation at k = 1 (where
/// it equals (e^l - 1 - l)/(e^l - 1)).
inline double one_plus_eta_minus_c(const TPoModel& model) {
  if (model.k == 0) return 1.0;
  if (model.k == 1) return std::exp(log_f_k(2, model.lambda) - log_f_k(1, model.lambda));
  return 1.0 + model.eta - model.c;
}

/// c as a function of lambda at k = 1: lambda e^l / (e^l - 1).
inline double c_of_lambda(double lambda) { return lambda / -std::expm1(-lambda); }

/// log of  e^l (e^l - 1 - l)^2 / ((e^{2l} - e^l - l)(e^l - 1)).
/// Uses e^l - 1 - l = f_2(l) and e^{2l} - e^l - l = f_2(2l) - f_2(l).
inline double log_phi(double lambda) {
  detail::require(lambda > 0.0, "phi: lambda must be positive");
  const double lf2 = log_f_k(2, lambda);
  const double lf2_double = log_f_k(2, 2.0 * lambda);
  const double log_denominator_a = lf2_double + std::log1p(-std::exp(lf2 - lf2_double));
  return lambda + 2.0 * lf2 - log_denominator_a - log_f_k(1, lambda);
}

/// Extra exponent c(2/e^l - 1/e^{2l}) in the loop-free no-plain-s-set limit.
inline double loopfree_phi_shift(double lambda, double c) {
  return c * (2.0 * std::exp(-lambda) - std::exp(-2.0 * lambda));
}

/// Limiting probability that a uniform dicore has no plain s-set (and hence,
/// for bounded c, is strongly connected).
inline double phi(double lambda, bool loop_free = false) {
  double l = log_phi(lambda);
  if (loop_free) l += loopfree_phi_shift(lambda, c_of_lambda(lambda));
  return std::exp(l);
}

/// Mean number of s-cycles of order <= k in the pairing model.
inline double mu_k(double c, std::size_t k, bool loop_free = false) {
  detail::require(c > 1.0, "mu_k: need c > 1");
  const double lambda = solve_lambda(c, 1).lambda;
  const double x = c * std::exp(-lambda);
  const double y = c * std::exp(-2.0 * lambda);
  double sum = 0.0;
  double xp = 1.0;
  double yp = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    xp *= x;
    yp *= y;
    if (j == 1 && loop_free) continue;
    sum += (2.0 * xp - yp) / static_cast<double>(j);
  }
  return sum;
}

inline double mu(double c, bool loop_free = false) {
  detail::require(c > 1.0, "mu: need c > 1");
  const double lambda = solve_lambda(c, 1).lambda;
  double value = -log_phi(lambda);
  if (loop_free) value -= loopfree_phi_shift(lambda, c);
  return value;
}

/// s-cycle mean of order <= k in a random heart (c -> 1): sum (2/j)(2/3)^j.
inline double heart_mu_k(std::size_t k) {
  double sum = 0.0;
  double p = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    p *= 2.0 / 3.0;
    sum += 2.0 * p / static_cast<double>(j);
  }
  return sum;
}

inline double heart_mu() { return std::log(9.0); }

/// Limiting probability that a random heart configuration is simple and
/// strongly connected: e^{-log 9}.
inline double heart_strong_probability() { return std::exp(-heart_mu()); }

/// Probability that a random pairing with truncated-Poisson degrees is simple
/// (and loop-free when requested).
inline double simple_probability(double lambda_plus, double lambda_minus, double c, bool loop_free = false) {
  detail::require(lambda_plus > 0.0 && lambda_minus > 0.0 && c > 0.0,
                  "simple_probability: parameters must be positive");
  return std::exp(-lambda_plus * lambda_minus / 2.0 - (loop_free ? c : 0.0));
}

/// Local limit approximation of P(Y_1 + ... + Y_n = m), Y_i ~ TPo_k.
inline double local_clt(std::size_t n, std::size_t m, int k) {
  detail::require(n >= 1 && static_cast<double>(m) > static_cast<double>(k) * static_cast<double>(n),
                  "local_clt: need m > k n");
  const double c = static_cast<double>(m) / static_cast<double>(n);
  const TPoModel model = solve_lambda(c, k);
  return 1.0 / std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n) * c * one_plus_eta_minus_c(model));
}

// ---------------------------------------------------------------------------
// Counts

namespace detail {

inline bool outside_regime(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  return n > 1 && static_cast<double>(m) > 3.0 * nn * std::log(nn);
}

inline TPoModel k1_model(std::size_t n, std::size_t m, const char* who) {
  require(n >= 1 && m > n, std::string(who) + ": need m > n (got n=" + std::to_string(n) +
                               ", m=" + std::to_string(m) + ")");
  return solve_lambda(static_cast<double>(m) / static_cast<double>(n), 1);
}

inline LogCount make_count(double value, CountForm form, std::size_t n, std::size_t m, const TPoModel& plus,
                           const TPoModel& minus) {
  LogCount out;
  out.log_value = value;
  out.form = form;
  out.params = CountParams{n, m, plus.k, minus.k, static_cast<double>(m) / static_cast<double>(n),
                           plus.lambda, minus.lambda, plus.eta, minus.eta};
  out.outside_regime = outside_regime(n, m);
  return out;
}

}  // namespace detail

/// Dicores (min in- and outdegree 1) with n vertices and m arcs, loops allowed:
///   m! (e^l - 1)^{2n} / (2 pi n c (1 + l - c) l^{2m}) e^{-l^2/2}.
inline LogCount log_count_dicore(std::size_t n, std::size_t m) {
  const TPoModel model = detail::k1_model(n, m, "log_count_dicore");
  const double l = model.lambda;
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  // n c = m exactly.
  const double value = std::lgamma(mm + 1.0) + 2.0 * nn * log_expm1(l) -
                       std::log(2.0 * std::numbers::pi * mm * one_plus_eta_minus_c(model)) -
                       2.0 * mm * std::log(l) - l * l / 2.0;
  return detail::make_count(value, CountForm::dicore, n, m, model, model);
}

enum class StrongForm { main, sparse, dense };

/// Strongly connected digraphs with n vertices and m arcs, loops allowed.
/// `sparse` and `dense` select the c -> 1 and c -> infinity simplifications.
inline LogCount log_count_strong(std::size_t n, std::size_t m, StrongForm form = StrongForm::main) {
  const TPoModel model = detail::k1_model(n, m, "log_count_strong");
  const double l = model.lambda;
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double base = std::lgamma(mm) + 2.0 * nn * log_expm1(l) - 2.0 * mm * std::log(l);
  switch (form) {
    case StrongForm::sparse:
      return detail::make_count(base - std::log(6.0 * std::numbers::pi), CountForm::strong_sparse_limit, n, m,
                                model, model);
    case StrongForm::dense:
      return detail::make_count(base - std::log(2.0 * std::numbers::pi) - l * l / 2.0,
                                CountForm::strong_dense_limit, n, m, model, model);
    case StrongForm::main:
      break;
  }
  const double value = base - std::log(2.0 * std::numbers::pi * one_plus_eta_minus_c(model)) - l * l / 2.0 +
                       log_phi(l);
  return detail::make_count(value, CountForm::strong, n, m, model, model);
}

/// Digraphs with all outdegrees >= kplus and indegrees >= kminus:
///   (m-1)! (f_{k-}(l-) f_{k+}(l+))^n e^{-l+ l-/2}
///     / (2 pi sqrt((1+eta+ - c)(1+eta- - c)) (l+)^m (l-)^m).
inline LogCount log_count_kdicore(std::size_t n, std::size_t m, int kplus, int kminus) {
  detail::require(kplus >= 1 && kminus >= 1, "log_count_kdicore: minimum degrees must be positive");
  detail::require(n >= 1 && m > static_cast<std::size_t>(kplus) * n && m > static_cast<std::size_t>(kminus) * n,
                  "log_count_kdicore: need m > k+ n and m > k- n");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  const double c = mm / nn;
  const TPoModel plus = solve_lambda(c, kplus);
  const TPoModel minus = solve_lambda(c, kminus);
  const double value = std::lgamma(mm) +
                       nn * (log_f_k(kminus, minus.lambda) + log_f_k(kplus, plus.lambda)) -
                       std::log(2.0 * std::numbers::pi) -
                       0.5 * std::log(one_plus_eta_minus_c(plus) * one_plus_eta_minus_c(minus)) -
                       mm * (std::log(plus.lambda) + std::log(minus.lambda)) -
                       plus.lambda * minus.lambda / 2.0;
  return detail::make_count(value, CountForm::kdicore, n, m, plus, minus);
}

/// Strongly connected loop-free digraphs: the loopy count times
/// exp(-c (1 - e^{-l})^2).
inline LogCount log_count_strong_loopfree(std::size_t n, std::size_t m) {
  LogCount out = log_count_strong(n, m);
  const double l = out.params.lambda_plus;
  const double one_minus = -std::expm1(-l);
  out.log_value -= out.params.c * one_minus * one_minus;
  out.form = CountForm::strong_loopfree;
  return out;
}

/// Loop-free digraphs with minimum degrees (k+, k-): the loopy count times e^{-c}.
inline LogCount log_count_kdicore_loopfree(std::size_t n, std::size_t m, int kplus, int kminus) {
  LogCount out = log_count_kdicore(n, m, kplus, kminus);
  out.log_value -= out.params.c;
  out.form = CountForm::kdicore_loopfree;
  return out;
}

/// Loop-free dicores: the k = (1,1) case of log_count_kdicore_loopfree, routed
/// through the dicore formula.
inline LogCount log_count_dicore_loopfree(std::size_t n, std::size_t m) {
  LogCount out = log_count_dicore(n, m);
  out.log_value -= out.params.c;
  out.form = CountForm::kdicore_loopfree;
  return out;
}

}  // namespace scd
