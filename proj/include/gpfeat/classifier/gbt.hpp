#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "gpfeat/classifier/labels.hpp"
#include "gpfeat/common/error.hpp"
#include "gpfeat/common/matrix.hpp"

namespace gpfeat {

enum class BoostMode { BinaryLogistic, OneVsRestMultilabel, Multiclass };

struct GBTHyperparams {
    int n_estimators = 70;
    int max_depth = 3;
    double learning_rate = 0.1;
    std::size_t min_samples_leaf = 1;
    BoostMode mode = BoostMode::OneVsRestMultilabel;

    // Multi-label tagging preset: 70 rounds, depth 3, learning rate 0.1.
    static GBTHyperparams multilabel_preset() { return {70, 3, 0.1, 1, BoostMode::OneVsRestMultilabel}; }
    // Multiclass preset: depth 2, learning rate 0.3.
    static GBTHyperparams multiclass_preset() { return {70, 2, 0.3, 1, BoostMode::Multiclass}; }

    void validate() const
    {
        if (n_estimators < 1) throw ConfigError("n_estimators must be >= 1");
        if (max_depth < 1) throw ConfigError("max_depth must be >= 1");
        if (!(learning_rate > 0.0 && learning_rate <= 1.0)) throw ConfigError("learning_rate must be in (0, 1]");
        if (min_samples_leaf < 1) throw ConfigError("min_samples_leaf must be >= 1");
    }
};

// Axis-aligned regression tree; rows with x[feature] <= threshold go left.
struct RegressionTree {
    struct Node {
        int feature = -1; // -1 marks a leaf
        double threshold = 0.0;
        int left = -1;
        int right = -1;
        double value = 0.0; // leaf Newton step, before learning-rate scaling

        bool is_leaf() const noexcept { return feature < 0; }
        bool operator==(const Node&) const = default;
    };

    std::vector<Node> nodes; // nodes[0] is the root

    template <typename RowAccess>
    double predict(RowAccess&& x) const
    {
        int at = 0;
        while (!nodes[static_cast<std::size_t>(at)].is_leaf()) {
            const auto& n = nodes[static_cast<std::size_t>(at)];
            at = x(static_cast<std::size_t>(n.feature)) <= n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(at)].value;
    }

    int depth() const
    {
        std::vector<int> d(nodes.size(), 0);
        int best = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!nodes[i].is_leaf()) {
                d[static_cast<std::size_t>(nodes[i].left)] = d[i] + 1;
                d[static_cast<std::size_t>(nodes[i].right)] = d[i] + 1;
            }
            best = std::max(best, d[i]);
        }
        return best;
    }

    bool operator==(const RegressionTree&) const = default;
};

struct GBTModel {
    GBTHyperparams hyper;
    std::size_t n_features = 0;
    std::vector<double> base_score;                 // log-odds, per output
    std::vector<std::vector<RegressionTree>> trees; // per output, in boosting order

    std::size_t outputs() const noexcept { return base_score.size(); }
};

inline double sigmoid(double z) noexcept { return 1.0 / (1.0 + std::exp(-z)); }

inline double logistic_loss(double y, double p) noexcept
{
    constexpr double eps = 1e-15;
    p = std::clamp(p, eps, 1.0 - eps);
    return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
}

// Negative gradient of the logistic loss with respect to the margin.
inline double logistic_negative_gradient(double y, double p) noexcept { return y - p; }

inline double prevalence_logit(double prevalence) noexcept
{
    const double p = std::clamp(prevalence, 1e-6, 1.0 - 1e-6);
    return std::log(p / (1.0 - p));
}

// Row order of every column sorted ascending by value (ties by row index).
using ColumnOrder = std::vector<std::uint32_t>;

inline ColumnOrder sort_column(std::span<const double> values)
{
    ColumnOrder order(values.size());
    std::iota(order.begin(), order.end(), 0U);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
    return order;
}

inline std::vector<ColumnOrder> presort_columns(const Matrix& x)
{
    std::vector<ColumnOrder> out;
    out.reserve(x.cols());
    for (std::size_t c = 0; c < x.cols(); ++c) {
        out.push_back(sort_column(x.column(c)));
    }
    return out;
}

namespace detail {

struct SplitCandidate {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
};

// Grows one tree level by level on residuals r = y - p with hessians h = p(1 - p).
// Split gain is the reduction in residual sum of squares; leaves take the Newton
// step sum(r) / (sum(h) + 1e-6). On return, leafOf[row] is the row's leaf node.
class TreeGrower {
public:
    TreeGrower(const Matrix& x, std::span<const std::span<const std::uint32_t>> order, const GBTHyperparams& hyper)
        : x_(x), order_(order), hyper_(hyper), leaf_of_(x.rows(), 0) {}

    RegressionTree grow(std::span<const double> r, std::span<const double> h)
    {
        const std::size_t n = x_.rows();
        RegressionTree tree;
        tree.nodes.emplace_back();
        std::fill(leaf_of_.begin(), leaf_of_.end(), 0);
        std::vector<int> level{0};

        for (int depth = 0; !level.empty(); ++depth) {
            const std::size_t m = level.size();
            slot_of_.assign(tree.nodes.size(), -1);
            for (std::size_t s = 0; s < m; ++s) {
                slot_of_[static_cast<std::size_t>(level[s])] = static_cast<int>(s);
            }
            count_.assign(m, 0);
            sum_r_.assign(m, 0.0);
            sum_h_.assign(m, 0.0);
            for (std::size_t row = 0; row < n; ++row) {
                const int s = slot_of_[static_cast<std::size_t>(leaf_of_[row])];
                if (s >= 0) {
                    ++count_[static_cast<std::size_t>(s)];
                    sum_r_[static_cast<std::size_t>(s)] += r[row];
                    sum_h_[static_cast<std::size_t>(s)] += h[row];
                }
            }

            best_.assign(m, SplitCandidate{});
            if (depth < hyper_.max_depth) {
                find_splits(r, m);
            }

            std::vector<int> next;
            for (std::size_t s = 0; s < m; ++s) {
                auto& node = tree.nodes[static_cast<std::size_t>(level[s])];
                if (best_[s].feature >= 0) {
                    node.feature = best_[s].feature;
                    node.threshold = best_[s].threshold;
                    node.left = static_cast<int>(tree.nodes.size());
                    node.right = node.left + 1;
                    // `node` may dangle after these pushes.
                    const int left = node.left;
                    tree.nodes.emplace_back();
                    tree.nodes.emplace_back();
                    next.push_back(left);
                    next.push_back(left + 1);
                } else {
                    node.value = sum_r_[s] / (sum_h_[s] + 1e-6);
                }
            }
            if (next.empty()) {
                break;
            }
            for (std::size_t row = 0; row < n; ++row) {
                const auto& node = tree.nodes[static_cast<std::size_t>(leaf_of_[row])];
                if (!node.is_leaf()) {
                    leaf_of_[row] = x_(row, static_cast<std::size_t>(node.feature)) <= node.threshold ? node.left : node.right;
                }
            }
            level = std::move(next);
        }
        return tree;
    }

    const std::vector<int>& leaf_of() const noexcept { return leaf_of_; }

private:
    void find_splits(std::span<const double> r, std::size_t m)
    {
        const auto minLeaf = hyper_.min_samples_leaf;
        std::vector<std::size_t> cnt(m);
        std::vector<double> sum(m);
        std::vector<double> prev(m);
        std::vector<double> parentScore(m);
        for (std::size_t s = 0; s < m; ++s) {
            parentScore[s] = count_[s] > 0 ? sum_r_[s] * sum_r_[s] / static_cast<double>(count_[s]) : 0.0;
        }

        for (std::size_t f = 0; f < x_.cols(); ++f) {
            std::fill(cnt.begin(), cnt.end(), 0);
            std::fill(sum.begin(), sum.end(), 0.0);
            const auto col = x_.column(f);
            for (const auto row : order_[f]) {
                const int si = slot_of_[static_cast<std::size_t>(leaf_of_[row])];
                if (si < 0) {
                    continue;
                }
                const auto s = static_cast<std::size_t>(si);
                const double v = col[row];
                const std::size_t nl = cnt[s];
                if (nl >= minLeaf && count_[s] - nl >= minLeaf && v != prev[s]) {
                    const double sl = sum[s];
                    const double sr = sum_r_[s] - sl;
                    const double gain = sl * sl / static_cast<double>(nl) + sr * sr / static_cast<double>(count_[s] - nl) - parentScore[s];
                    if (gain > best_[s].gain) {
                        double threshold = prev[s] + (v - prev[s]) * 0.5;
                        if (!(threshold < v)) {
                            threshold = prev[s];
                        }
                        best_[s] = {gain, static_cast<int>(f), threshold};
                    }
                }
                ++cnt[s];
                sum[s] += r[row];
                prev[s] = v;
            }
        }
    }

    const Matrix& x_;
    std::span<const std::span<const std::uint32_t>> order_;
    const GBTHyperparams& hyper_;
    std::vector<int> leaf_of_;
    std::vector<int> slot_of_;
    std::vector<std::size_t> count_;
    std::vector<double> sum_r_;
    std::vector<double> sum_h_;
    std::vector<SplitCandidate> best_;
};

inline void check_finite(const Matrix& x)
{
    for (std::size_t c = 0; c < x.cols(); ++c) {
        for (double v : x.column(c)) {
            if (!std::isfinite(v)) {
                throw ContractViolation("training features contain non-finite values (column " + std::to_string(c) + ")");
            }
        }
    }
}

} // namespace detail

// Gradient-boosted trees on the logistic loss, one independent booster per
// output. `order`, when given, must hold sort_column() of every column of x; it
// lets callers reuse sort work across trainings that share columns.
inline GBTModel train_gbt(const Matrix& x, const Labels& labels, const GBTHyperparams& hyper,
                          std::span<const std::span<const std::uint32_t>> order = {})
{
    hyper.validate();
    if (labels.rows() != x.rows()) {
        throw ContractViolation("label rows (" + std::to_string(labels.rows()) + ") != feature rows (" + std::to_string(x.rows()) + ")");
    }
    if (x.rows() == 0) {
        throw ContractViolation("cannot train on zero rows");
    }
    if ((hyper.mode == BoostMode::Multiclass) != (labels.kind() == LabelKind::Multiclass)) {
        throw ContractViolation("boost mode does not match label kind");
    }
    if (hyper.mode == BoostMode::BinaryLogistic && labels.outputs() != 1) {
        throw ContractViolation("binary mode needs exactly one output");
    }
    detail::check_finite(x);

    std::vector<ColumnOrder> owned;
    std::vector<std::span<const std::uint32_t>> views;
    if (order.empty()) {
        owned = presort_columns(x);
        views.assign(owned.begin(), owned.end());
        order = views;
    } else if (order.size() != x.cols()) {
        throw ContractViolation("column order count does not match feature width");
    }

    const std::size_t n = x.rows();
    GBTModel model;
    model.hyper = hyper;
    model.n_features = x.cols();
    model.base_score.resize(labels.outputs());
    model.trees.resize(labels.outputs());

    detail::TreeGrower grower(x, order, hyper);
    std::vector<double> margin(n);
    std::vector<double> r(n);
    std::vector<double> h(n);

    for (std::size_t k = 0; k < labels.outputs(); ++k) {
        const auto y = labels.target_column(k);
        const double positives = std::accumulate(y.begin(), y.end(), 0.0);
        const double prevalence = positives / static_cast<double>(n);
        model.base_score[k] = prevalence_logit(prevalence);
        if (positives == 0.0 || positives == static_cast<double>(n)) {
            continue;
        }
        std::fill(margin.begin(), margin.end(), model.base_score[k]);
        auto& trees = model.trees[k];
        trees.reserve(static_cast<std::size_t>(hyper.n_estimators));
        for (int round = 0; round < hyper.n_estimators; ++round) {
            for (std::size_t i = 0; i < n; ++i) {
                const double p = sigmoid(margin[i]);
                r[i] = logistic_negative_gradient(y[i], p);
                h[i] = p * (1.0 - p);
            }
            trees.push_back(grower.grow(r, h));
            const auto& leafOf = grower.leaf_of();
            const auto& nodes = trees.back().nodes;
            for (std::size_t i = 0; i < n; ++i) {
                margin[i] += hyper.learning_rate * nodes[static_cast<std::size_t>(leafOf[i])].value;
            }
        }
    }
    return model;
}

// Raw margins (log-odds) per row and output, optionally using only the first
// `maxRounds` trees of each output.
inline Matrix predict_margins(const GBTModel& model, const Matrix& x, std::size_t maxRounds = std::numeric_limits<std::size_t>::max())
{
    if (x.cols() != model.n_features) {
        throw ContractViolation("feature width " + std::to_string(x.cols()) + " does not match model width " +
                                std::to_string(model.n_features));
    }
    Matrix out(x.rows(), model.outputs());
    for (std::size_t k = 0; k < model.outputs(); ++k) {
        auto col = out.column(k);
        std::fill(col.begin(), col.end(), model.base_score[k]);
        const auto& trees = model.trees[k];
        const std::size_t rounds = std::min(maxRounds, trees.size());
        for (std::size_t t = 0; t < rounds; ++t) {
            for (std::size_t i = 0; i < x.rows(); ++i) {
                col[i] += model.hyper.learning_rate * trees[t].predict([&](std::size_t f) { return x(i, f); });
            }
        }
    }
    return out;
}

// Per-output probabilities sigmoid(base + sum of scaled leaf values).
inline Matrix predict_scores(const GBTModel& model, const Matrix& x)
{
    auto out = predict_margins(model, x);
    for (std::size_t k = 0; k < out.cols(); ++k) {
        for (auto& v : out.column(k)) {
            v = sigmoid(v);
        }
    }
    return out;
}

// Argmax over outputs per row; ties go to the lowest output index.
inline std::vector<int> predict_classes(const Matrix& scores)
{
    std::vector<int> out(scores.rows(), 0);
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < scores.cols(); ++k) {
            if (scores(i, k) > best) {
                best = scores(i, k);
                out[i] = static_cast<int>(k);
            }
        }
    }
    return out;
}

} // namespace gpfeat
