#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include <boost/math/distributions/chi_squared.hpp>

#include "error.hpp"

namespace scd {

inline double binomial_stderr(double p, std::size_t trials) {
  if (trials == 0) return 0.0;
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit of observed counts against expected probabilities.
inline ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> probability) {
  detail::require(observed.size() == probability.size() && !observed.empty(), "chi_square_test: size mismatch");
  std::uint64_t total = 0;
  for (auto o : observed) total += o;
  ChiSquareResult r;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = probability[i] * static_cast<double>(total);
    detail::require(expected > 0.0, "chi_square_test: zero expected count");
    const double diff = static_cast<double>(observed[i]) - expected;
    r.statistic += diff * diff / expected;
  }
  r.degrees_of_freedom = observed.size() - 1;
  if (r.degrees_of_freedom == 0) return r;
  boost::math::chi_squared dist(static_cast<double>(r.degrees_of_freedom));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

}  // namespace scd
