#include "hapnav/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "hapnav/errors.hpp"
#include "hapnav/rng.hpp"

namespace hapnav::stats {

double mean(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyGroup, "mean of an empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double median(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorCode::EmptyGroup, "median of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double permutation_p_value(std::span<const double> a, std::span<const double> b, int shuffles,
                           std::uint64_t seed) {
    if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyGroup, "permutation test needs two groups");
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const double total = std::accumulate(pooled.begin(), pooled.end(), 0.0);
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    auto diff_for = [&](double sum_a) { return sum_a / na - (total - sum_a) / nb; };

    const double observed = std::abs(diff_for(std::accumulate(a.begin(), a.end(), 0.0)));
    // Relative slack so that ties with the observed split count as extreme.
    const double slack = 1e-12 * std::max(1.0, observed);
    Rng rng(seed);
    int extreme = 0;
    for (int s = 0; s < shuffles; ++s) {
        // Partial Fisher-Yates: only the first |a| slots are needed.
        double sum_a = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::size_t j = i + rng.index(pooled.size() - i);
            std::swap(pooled[i], pooled[j]);
            sum_a += pooled[i];
        }
        if (std::abs(diff_for(sum_a)) >= observed - slack) ++extreme;
    }
    return (extreme + 1.0) / (shuffles + 1.0);
}

}  // namespace hapnav::stats
