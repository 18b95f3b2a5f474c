#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "gpfeat/common/error.hpp"
#include "gpfeat/engine/run_log.hpp"

namespace gpfeat {

struct TrajectorySeries {
    std::vector<std::uint64_t> evaluation;
    std::vector<double> best_so_far;
    std::vector<double> running_average;
};

// Best-so-far and running mean of fitness in logged evaluation order.
inline TrajectorySeries trajectory(const RunLog& log)
{
    if (log.evaluations.empty()) {
        throw ContractViolation("trajectory of an empty run log");
    }
    TrajectorySeries s;
    const auto n = log.evaluations.size();
    s.evaluation.reserve(n);
    s.best_so_far.reserve(n);
    s.running_average.reserve(n);
    double best = log.evaluations.front().fitness;
    double sum = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const auto& e = log.evaluations[t];
        best = std::max(best, e.fitness);
        sum += e.fitness;
        s.evaluation.push_back(e.eval);
        s.best_so_far.push_back(best);
        s.running_average.push_back(sum / static_cast<double>(t + 1));
    }
    return s;
}

struct FiveNumberSummary {
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

// Quantile of ascending data by linear interpolation between closest ranks.
inline double interpolated_quantile(std::span<const double> sorted, double q)
{
    if (sorted.empty()) {
        throw ContractViolation("quantile of an empty sequence");
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline FiveNumberSummary distribution_summary(std::span<const double> values)
{
    if (values.empty()) {
        throw ContractViolation("distribution summary of an empty sequence");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return {sorted.front(), interpolated_quantile(sorted, 0.25), interpolated_quantile(sorted, 0.5), interpolated_quantile(sorted, 0.75),
            sorted.back()};
}

} // namespace gpfeat
