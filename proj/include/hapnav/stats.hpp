#pragma once

#include <cstdint>
#include <span>

namespace hapnav::stats {

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1); 0 for fewer than two values.
double stddev(std::span<const double> values);
double median(std::span<const double> values);

/// Two-sided permutation test on the difference of group means. Returns
/// (extreme + 1) / (shuffles + 1), so the smallest attainable p is 1 / (shuffles + 1).
double permutation_p_value(std::span<const double> a, std::span<const double> b,
                           int shuffles = 10000, std::uint64_t seed = 0);

}  // namespace hapnav::stats
