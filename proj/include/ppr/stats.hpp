#pragma once

#include <cstdint>
#include <span>

namespace ppr {

/// Lower median: the ceil(k/2)-th smallest of k values.
double median(std::span<const double> values);

/// ceil(12 ln(2 n^3) / eps): walks needed for rough estimates that are within
/// a factor 1/2 of every value >= eps/4 (and within eps/4 otherwise) with
/// probability 1 - 1/n^2.
std::uint64_t phase1_walk_count(std::size_t n, double eps);

/// ceil(18 ln(2 n^2)): median-trick trial count for failure 1/(2n^2).
std::uint64_t trial_count(std::size_t n);

/// ceil(18 ln(1/p_fail)).
std::uint64_t trial_count_for_failure(double p_fail);

/// Two-sided Chernoff tail for the mean of k independent [0, r] variables
/// with mean mu: 2 exp(-lambda^2 k / (2 r (mu + lambda/3))).
double chernoff_bound(double lambda, std::uint64_t k, double mu, double r = 1.0);

}  // namespace ppr
