#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gpfeat/common/error.hpp"
#include "gpfeat/engine/hall_of_fame.hpp"
#include "gpfeat/exprtree/operators.hpp"
#include "gpfeat/exprtree/tree.hpp"

namespace gpfeat {

// Presence counts of item pairs across a set of expressions, with the mean
// performance of the expressions containing each pair.
struct CooccurrenceReport {
    std::vector<std::string> row_names;
    std::vector<std::string> col_names;
    std::vector<std::size_t> pair_count;   // row-major rows x cols
    std::vector<double> mean_performance;  // NaN where pair_count is 0
    std::vector<std::size_t> row_support;  // expressions containing each row item
    std::vector<std::size_t> col_support;
    std::size_t source_size = 0;

    std::size_t rows() const noexcept { return row_names.size(); }
    std::size_t cols() const noexcept { return col_names.size(); }
    std::size_t count(std::size_t r, std::size_t c) const { return pair_count.at(r * cols() + c); }
    double mean(std::size_t r, std::size_t c) const { return mean_performance.at(r * cols() + c); }
    bool square() const noexcept { return row_names == col_names; }
};

enum class OperatorFeatureMode {
    Presence,  // operator and feature both appear somewhere in the expression
    Adjacency, // operator applied directly to the feature
};

namespace detail {

inline CooccurrenceReport empty_report(std::vector<std::string> rows, std::vector<std::string> cols, std::size_t sourceSize)
{
    CooccurrenceReport r;
    r.row_names = std::move(rows);
    r.col_names = std::move(cols);
    r.pair_count.assign(r.rows() * r.cols(), 0);
    r.mean_performance.assign(r.rows() * r.cols(), 0.0);
    r.row_support.assign(r.rows(), 0);
    r.col_support.assign(r.cols(), 0);
    r.source_size = sourceSize;
    return r;
}

// Turns accumulated sums into means.
inline void finish_means(CooccurrenceReport& r)
{
    for (std::size_t i = 0; i < r.pair_count.size(); ++i) {
        r.mean_performance[i] = r.pair_count[i] > 0 ? r.mean_performance[i] / static_cast<double>(r.pair_count[i])
                                                    : std::numeric_limits<double>::quiet_NaN();
    }
}

inline std::vector<char> features_present(const ExpressionTree& tree, std::size_t featureCount)
{
    std::vector<char> present(featureCount, 0);
    for (const auto& n : tree.nodes()) {
        if (n.kind == NodeKind::Feature) {
            if (n.feature >= featureCount) {
                throw ContractViolation("expression refers to feature " + std::to_string(n.feature) + " beyond the name list");
            }
            present[n.feature] = 1;
        }
    }
    return present;
}

inline void check_sizes(std::size_t trees, std::size_t performance)
{
    if (trees != performance) {
        throw ContractViolation("one performance value is required per expression");
    }
}

} // namespace detail

// Feature-feature matrix: an expression counts once for every unordered pair of
// distinct features that both appear among its leaves. Self-pairs are never counted.
inline CooccurrenceReport feature_pair_cooccurrence(std::span<const ExpressionTree> trees, std::span<const double> performance,
                                                    const std::vector<std::string>& featureNames)
{
    detail::check_sizes(trees.size(), performance.size());
    const std::size_t d = featureNames.size();
    auto r = detail::empty_report(featureNames, featureNames, trees.size());
    std::vector<std::size_t> idx;
    for (std::size_t e = 0; e < trees.size(); ++e) {
        const auto present = detail::features_present(trees[e], d);
        idx.clear();
        for (std::size_t f = 0; f < d; ++f) {
            if (present[f]) {
                idx.push_back(f);
                ++r.row_support[f];
                ++r.col_support[f];
            }
        }
        for (std::size_t a = 0; a < idx.size(); ++a) {
            for (std::size_t b = 0; b < idx.size(); ++b) {
                if (a != b) {
                    const auto at = idx[a] * d + idx[b];
                    ++r.pair_count[at];
                    r.mean_performance[at] += performance[e];
                }
            }
        }
    }
    detail::finish_means(r);
    return r;
}

// Operator-feature matrix with one row per registry operator.
inline CooccurrenceReport operator_feature_stats(std::span<const ExpressionTree> trees, std::span<const double> performance,
                                                 const std::vector<std::string>& featureNames,
                                                 OperatorFeatureMode mode = OperatorFeatureMode::Presence)
{
    detail::check_sizes(trees.size(), performance.size());
    const std::size_t d = featureNames.size();
    std::vector<std::string> opNames;
    for (const auto& spec : kOperators) {
        opNames.emplace_back(spec.name);
    }
    const std::size_t ops = opNames.size();
    auto r = detail::empty_report(std::move(opNames), featureNames, trees.size());
    std::vector<char> pair(ops * d);
    for (std::size_t e = 0; e < trees.size(); ++e) {
        const auto& nodes = trees[e].nodes();
        const auto features = detail::features_present(trees[e], d);
        std::vector<char> opsPresent(ops, 0);
        std::fill(pair.begin(), pair.end(), 0);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].kind != NodeKind::Operator) {
                continue;
            }
            const auto op = static_cast<std::size_t>(nodes[i].op);
            opsPresent[op] = 1;
            if (mode == OperatorFeatureMode::Adjacency) {
                std::size_t child = i + 1;
                for (int k = 0; k < nodes[i].arity(); ++k) {
                    if (nodes[child].kind == NodeKind::Feature) {
                        pair[op * d + nodes[child].feature] = 1;
                    }
                    child = trees[e].subtree_end(child);
                }
            }
        }
        for (std::size_t o = 0; o < ops; ++o) {
            r.row_support[o] += static_cast<std::size_t>(opsPresent[o]);
        }
        for (std::size_t f = 0; f < d; ++f) {
            r.col_support[f] += static_cast<std::size_t>(features[f]);
        }
        for (std::size_t o = 0; o < ops; ++o) {
            for (std::size_t f = 0; f < d; ++f) {
                const bool hit = mode == OperatorFeatureMode::Presence ? (opsPresent[o] && features[f]) : pair[o * d + f] != 0;
                if (hit) {
                    ++r.pair_count[o * d + f];
                    r.mean_performance[o * d + f] += performance[e];
                }
            }
        }
    }
    detail::finish_means(r);
    return r;
}

// Convenience overloads scoring each entry by its raw (pre-penalty) metric.
inline std::pair<std::vector<ExpressionTree>, std::vector<double>> trees_and_metrics(std::span<const HallOfFameEntry> entries)
{
    std::pair<std::vector<ExpressionTree>, std::vector<double>> out;
    for (const auto& e : entries) {
        out.first.push_back(e.tree);
        out.second.push_back(e.record.raw_metric);
    }
    return out;
}

inline CooccurrenceReport feature_pair_cooccurrence(std::span<const HallOfFameEntry> entries, const std::vector<std::string>& featureNames)
{
    const auto [trees, metrics] = trees_and_metrics(entries);
    return feature_pair_cooccurrence(trees, metrics, featureNames);
}

inline CooccurrenceReport operator_feature_stats(std::span<const HallOfFameEntry> entries, const std::vector<std::string>& featureNames,
                                                 OperatorFeatureMode mode = OperatorFeatureMode::Presence)
{
    const auto [trees, metrics] = trees_and_metrics(entries);
    return operator_feature_stats(trees, metrics, featureNames, mode);
}

} // namespace gpfeat
