#include "ppr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ppr/types.hpp"

namespace ppr {

double median(std::span<const double> values) {
  require(!values.empty(), "median of an empty list");
  std::vector<double> tmp(values.begin(), values.end());
  const std::size_t k = (tmp.size() + 1) / 2 - 1;
  std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(k), tmp.end());
  return tmp[k];
}

std::uint64_t phase1_walk_count(std::size_t n, double eps) {
  require(n >= 1, "n must be positive");
  require(eps > 0.0, "eps must be positive");
  const double log_term = std::log(2.0) + 3.0 * std::log(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil(12.0 * log_term / eps));
}

std::uint64_t trial_count(std::size_t n) {
  require(n >= 1, "n must be positive");
  const double log_term = std::log(2.0) + 2.0 * std::log(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil(18.0 * log_term));
}

std::uint64_t trial_count_for_failure(double p_fail) {
  require(p_fail > 0.0 && p_fail < 1.0, "failure probability must lie in (0, 1)");
  return static_cast<std::uint64_t>(std::ceil(18.0 * std::log(1.0 / p_fail)));
}

double chernoff_bound(double lambda, std::uint64_t k, double mu, double r) {
  require(lambda > 0.0 && r > 0.0 && mu >= 0.0, "invalid Chernoff parameters");
  const double kk = static_cast<double>(k);
  return 2.0 * std::exp(-lambda * lambda * kk / (2.0 * r * (mu + lambda / 3.0)));
}

}  // namespace ppr
