#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpfeat/classifier/gbt.hpp"
#include "gpfeat/classifier/labels.hpp"
#include "gpfeat/common/error.hpp"
#include "gpfeat/common/matrix.hpp"

namespace gpfeat {

enum class Metric { RocAucMacro, Accuracy };

inline std::string_view to_string(Metric m) { return m == Metric::RocAucMacro ? "rocAucMacro" : "accuracy"; }

inline Metric metric_from_string(std::string_view s)
{
    if (s == "rocAucMacro" || s == "auc" || s == "roc_auc") return Metric::RocAucMacro;
    if (s == "accuracy" || s == "acc") return Metric::Accuracy;
    throw ConfigError("unknown metric '" + std::string(s) + "'");
}

// Metric must match the target structure: ROC-AUC for binary/multilabel tags,
// accuracy for multiclass.
inline void check_metric_compatible(Metric metric, LabelKind kind)
{
    const bool ok = (metric == Metric::RocAucMacro) == (kind == LabelKind::Multilabel);
    if (!ok) {
        throw ConfigError(std::string("metric ") + std::string(to_string(metric)) + " is incompatible with " +
                          (kind == LabelKind::Multilabel ? "multilabel" : "multiclass") + " labels");
    }
}

// Mann-Whitney AUC with mid-ranks for tied scores. Empty when either class is absent.
inline std::optional<double> roc_auc(std::span<const double> scores, std::span<const double> positive)
{
    if (scores.size() != positive.size()) {
        throw ContractViolation("roc_auc: scores and labels differ in length");
    }
    const std::size_t n = scores.size();
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return scores[a] < scores[b]; });

    double rankSumPos = 0.0;
    double nPos = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && scores[order[j]] == scores[order[i]]) {
            ++j;
        }
        // Ranks i+1..j share their average.
        const double midRank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t k = i; k < j; ++k) {
            if (positive[order[k]] > 0.5) {
                rankSumPos += midRank;
                nPos += 1.0;
            }
        }
        i = j;
    }
    const double nNeg = static_cast<double>(n) - nPos;
    if (nPos == 0.0 || nNeg == 0.0) {
        return std::nullopt;
    }
    return (rankSumPos - nPos * (nPos + 1.0) / 2.0) / (nPos * nNeg);
}

// Mean per-output AUC over outputs that contain both classes. Multiclass labels
// are scored one-vs-rest per class.
inline double roc_auc_macro(const Matrix& scores, const Labels& labels)
{
    if (scores.rows() != labels.rows() || scores.cols() != labels.outputs()) {
        throw ContractViolation("roc_auc_macro: score matrix shape does not match labels");
    }
    double total = 0.0;
    std::size_t used = 0;
    for (std::size_t k = 0; k < labels.outputs(); ++k) {
        const auto y = labels.target_column(k);
        if (auto auc = roc_auc(scores.column(k), y)) {
            total += *auc;
            ++used;
        }
    }
    if (used == 0) {
        throw MetricError("ROC-AUC undefined: no output has both positive and negative rows");
    }
    return total / static_cast<double>(used);
}

inline double accuracy(std::span<const int> predicted, std::span<const int> truth)
{
    if (predicted.size() != truth.size()) {
        throw ContractViolation("accuracy: prediction and truth lengths differ");
    }
    if (truth.empty()) {
        throw MetricError("accuracy undefined on zero rows");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        hits += predicted[i] == truth[i] ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(truth.size());
}

// Scores the classifier output `scores` (rows x outputs probabilities).
inline double compute_metric(Metric metric, const Matrix& scores, const Labels& labels)
{
    if (metric == Metric::RocAucMacro) {
        return roc_auc_macro(scores, labels);
    }
    if (labels.kind() != LabelKind::Multiclass) {
        throw ContractViolation("accuracy requires multiclass labels");
    }
    return accuracy(predict_classes(scores), labels.classes());
}

} // namespace gpfeat
