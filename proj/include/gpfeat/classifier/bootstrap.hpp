#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "gpfeat/classifier/labels.hpp"
#include "gpfeat/classifier/metrics.hpp"
#include "gpfeat/common/error.hpp"
#include "gpfeat/common/matrix.hpp"
#include "gpfeat/common/parallel.hpp"
#include "gpfeat/common/rng.hpp"

namespace gpfeat {

struct MetricResult {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    Metric metric = Metric::RocAucMacro;
};

// "0.730 [0.724–0.736]" (en dash between the bounds).
inline std::string format_metric_result(const MetricResult& r)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.3f [%.3f–%.3f]", r.point, r.ci_low, r.ci_high);
    return buf;
}

// Linear-interpolation quantile of sorted data (q in [0, 1]).
inline double quantile_sorted(const std::vector<double>& sorted, double q)
{
    if (sorted.empty()) {
        throw ContractViolation("quantile of empty sample");
    }
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

struct BootstrapOptions {
    std::size_t resamples = 2000;
    double level = 0.95;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    double max_undefined_fraction = 0.10;
};

// Row indices of one bootstrap resample. Multiclass resamples within each true
// class, preserving class counts; multilabel resamples rows uniformly.
inline std::vector<std::size_t> bootstrap_rows(const Labels& labels, Rng& rng)
{
    const std::size_t n = labels.rows();
    std::vector<std::size_t> rows;
    rows.reserve(n);
    if (labels.kind() == LabelKind::Multiclass) {
        std::vector<std::vector<std::size_t>> byClass(labels.outputs());
        for (std::size_t i = 0; i < n; ++i) {
            byClass[static_cast<std::size_t>(labels.classes()[i])].push_back(i);
        }
        for (const auto& members : byClass) {
            for (std::size_t k = 0; k < members.size(); ++k) {
                rows.push_back(members[uniform_index(rng, members.size())]);
            }
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            rows.push_back(uniform_index(rng, n));
        }
    }
    return rows;
}

// Percentile bootstrap interval. Resample b draws from its own stream derived
// from (seed, b), so results do not depend on the worker count.
inline MetricResult bootstrap_ci(const Matrix& scores, const Labels& labels, Metric metric, const BootstrapOptions& options = {})
{
    if (options.resamples < 1) {
        throw ContractViolation("bootstrap needs at least one resample");
    }
    if (!(options.level > 0.0 && options.level < 1.0)) {
        throw ContractViolation("confidence level must be in (0, 1)");
    }
    if (labels.rows() == 0) {
        throw ContractViolation("bootstrap on an empty test set");
    }

    MetricResult result;
    result.metric = metric;
    result.point = compute_metric(metric, scores, labels);

    std::vector<std::optional<double>> values(options.resamples);
    parallel_for(options.resamples, options.workers, [&](std::size_t b) {
        auto rng = make_stream(options.seed, "bootstrap", b);
        const auto rows = bootstrap_rows(labels, rng);
        try {
            values[b] = compute_metric(metric, scores.select_rows(rows), labels.select_rows(rows));
        } catch (const MetricError&) {
            values[b] = std::nullopt;
        }
    });

    std::vector<double> defined;
    defined.reserve(values.size());
    for (const auto& v : values) {
        if (v) {
            defined.push_back(*v);
        }
    }
    const double undefined = static_cast<double>(values.size() - defined.size()) / static_cast<double>(values.size());
    if (undefined > options.max_undefined_fraction) {
        throw MetricError("metric undefined on " + std::to_string(values.size() - defined.size()) + " of " +
                          std::to_string(values.size()) + " bootstrap resamples");
    }
    std::sort(defined.begin(), defined.end());
    const double alpha = 1.0 - options.level;
    result.ci_low = quantile_sorted(defined, alpha / 2.0);
    result.ci_high = quantile_sorted(defined, 1.0 - alpha / 2.0);
    // A skewed resample distribution can leave the point estimate outside the
    // percentile interval; widen the interval to contain it.
    result.ci_low = std::min(result.ci_low, result.point);
    result.ci_high = std::max(result.ci_high, result.point);
    return result;
}

} // namespace gpfeat
