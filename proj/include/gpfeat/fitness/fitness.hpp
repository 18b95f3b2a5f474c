#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gpfeat/classifier/gbt.hpp"
#include "gpfeat/classifier/metrics.hpp"
#include "gpfeat/common/error.hpp"
#include "gpfeat/common/matrix.hpp"
#include "gpfeat/data/dataset.hpp"
#include "gpfeat/exprtree/evaluate.hpp"
#include "gpfeat/exprtree/format.hpp"
#include "gpfeat/fitness/record.hpp"

namespace gpfeat {

// Trains on (trainX, trainY) and returns the held-out metric on (evalX, evalY).
// `order` holds the sorted row order of every trainX column.
using HoldoutScorer = std::function<double(const Matrix& trainX, std::span<const std::span<const std::uint32_t>> order,
                                           const Labels& trainY, const Matrix& evalX, const Labels& evalY)>;

inline HoldoutScorer gbt_scorer(GBTHyperparams hyper, Metric metric)
{
    return [hyper, metric](const Matrix& trainX, std::span<const std::span<const std::uint32_t>> order, const Labels& trainY,
                           const Matrix& evalX, const Labels& evalY) {
        const auto model = train_gbt(trainX, trainY, hyper, order);
        return compute_metric(metric, predict_scores(model, evalX), evalY);
    };
}

struct FitnessSettings {
    GBTHyperparams hyper = GBTHyperparams::multilabel_preset();
    Metric metric = Metric::RocAucMacro;
    double lambda = 0.01;
    double invalid_penalty = 1.0;
};

// Names of the terminals available in an iteration: base features, followed by
// previously accepted composites ("gp1", "gp2", ...) when those are allowed.
inline FeatureSet terminal_names(const Dataset& data, std::size_t acceptedCount, bool acceptedAsTerminals)
{
    FeatureSet names = data.names;
    if (acceptedAsTerminals) {
        for (std::size_t j = 0; j < acceptedCount; ++j) {
            names.add("gp" + std::to_string(j + 1));
        }
    }
    return names;
}

// Standardized base features followed by one standardized column per accepted
// tree, over all rows. Tree j is evaluated on the base columns plus columns of
// trees 0..j-1; each column is sanitized then scaled with train statistics.
inline Matrix augmented_features(const Dataset& data, std::span<const ExpressionTree> accepted, bool* hadNonFinite = nullptr)
{
    Matrix x = data.features;
    for (const auto& tree : accepted) {
        auto result = evaluate(tree, x);
        if (hadNonFinite && result.had_non_finite) {
            *hadNonFinite = true;
        }
        ColumnScaler::fit(result.values, data.splits.train).apply_in_place(result.values);
        x.append_column(result.values);
    }
    return x;
}

struct HoldoutEvaluation {
    Matrix scores; // per evaluated row and output
    Labels labels;
    double metric = 0.0;
};

// Trains the classifier on the train rows of base plus accepted features and
// scores `evalRows` (typically the test split).
inline HoldoutEvaluation holdout_evaluation(const Dataset& data, std::span<const ExpressionTree> accepted, const GBTHyperparams& hyper,
                                            Metric metric, std::span<const std::size_t> evalRows)
{
    if (evalRows.empty()) {
        throw ConfigError("held-out evaluation needs a non-empty split");
    }
    check_metric_compatible(metric, data.labels.kind());
    const Matrix all = augmented_features(data, accepted);
    const auto model = train_gbt(all.select_rows(data.splits.train), data.labels.select_rows(data.splits.train), hyper);
    HoldoutEvaluation out;
    out.scores = predict_scores(model, all.select_rows(evalRows));
    out.labels = data.labels.select_rows(evalRows);
    out.metric = compute_metric(metric, out.scores, out.labels);
    return out;
}

// Everything a candidate evaluation needs that does not depend on the candidate:
// the base-plus-accepted matrices for train and validation rows and their sort orders.
class FitnessContext {
public:
    FitnessContext(const Dataset& data, std::vector<ExpressionTree> accepted, FitnessSettings settings, bool acceptedAsTerminals = false)
        : FitnessContext(data, std::move(accepted), settings, acceptedAsTerminals, gbt_scorer(settings.hyper, settings.metric)) {}

    FitnessContext(const Dataset& data, std::vector<ExpressionTree> accepted, FitnessSettings settings, bool acceptedAsTerminals,
                   HoldoutScorer scorer)
        : settings_(settings)
        , scorer_(std::move(scorer))
        , names_(terminal_names(data, accepted.size(), acceptedAsTerminals))
        , accepted_(std::move(accepted))
    {
        if (data.splits.validation.empty()) {
            throw ConfigError("fitness evaluation needs a non-empty validation split");
        }
        check_metric_compatible(settings_.metric, data.labels.kind());
        const Matrix all = augmented_features(data, accepted_);
        train_x_ = all.select_rows(data.splits.train);
        val_x_ = all.select_rows(data.splits.validation);
        train_y_ = data.labels.select_rows(data.splits.train);
        val_y_ = data.labels.select_rows(data.splits.validation);
        // Candidate terminals: base columns only, or base plus accepted composites.
        const std::size_t terminalCols = names_.size();
        train_terminals_ = first_columns(train_x_, terminalCols);
        val_terminals_ = first_columns(val_x_, terminalCols);
        order_ = presort_columns(train_x_);
    }

    const FeatureSet& terminals() const noexcept { return names_; }
    const FitnessSettings& settings() const noexcept { return settings_; }
    std::size_t trainings() const noexcept { return trainings_.load(); }

    // Validation metric of the classifier on base plus accepted features only.
    double baseline_metric() const
    {
        std::vector<std::span<const std::uint32_t>> order(order_.begin(), order_.end());
        ++trainings_;
        return scorer_(train_x_, order, train_y_, val_x_, val_y_);
    }

    // Augments with the candidate column and scores it. Safe to call concurrently.
    FitnessRecord evaluate(const ExpressionTree& candidate) const
    {
        try {
            auto trainCol = gpfeat::evaluate(candidate, train_terminals_);
            auto valCol = gpfeat::evaluate(candidate, val_terminals_);
            const bool nonFinite = trainCol.had_non_finite || valCol.had_non_finite;

            std::vector<std::size_t> all(trainCol.values.size());
            for (std::size_t i = 0; i < all.size(); ++i) {
                all[i] = i;
            }
            const auto scaler = ColumnScaler::fit(trainCol.values, all);
            scaler.apply_in_place(trainCol.values);
            scaler.apply_in_place(valCol.values);

            Matrix trainX = train_x_;
            trainX.append_column(trainCol.values);
            Matrix valX = val_x_;
            valX.append_column(valCol.values);

            const auto candidateOrder = sort_column(trainX.column(trainX.cols() - 1));
            std::vector<std::span<const std::uint32_t>> order(order_.begin(), order_.end());
            order.emplace_back(candidateOrder);

            ++trainings_;
            const double raw = scorer_(trainX, order, train_y_, valX, val_y_);
            return make_fitness_record(raw, candidate.node_count(), nonFinite, settings_.lambda, settings_.invalid_penalty);
        } catch (const EvaluationError&) {
            throw;
        } catch (const std::exception& ex) {
            throw EvaluationError(serialize_or_raw(candidate), ex.what());
        }
    }

    FitnessRecord operator()(const ExpressionTree& candidate) const { return evaluate(candidate); }

private:
    static Matrix first_columns(const Matrix& x, std::size_t count)
    {
        Matrix out;
        for (std::size_t c = 0; c < count; ++c) {
            out.append_column(x.column(c));
        }
        return out;
    }

    std::string serialize_or_raw(const ExpressionTree& tree) const
    {
        try {
            return serialize(tree, names_);
        } catch (const std::exception&) {
            return "<tree with " + std::to_string(tree.node_count()) + " nodes>";
        }
    }

    FitnessSettings settings_;
    HoldoutScorer scorer_;
    FeatureSet names_;
    std::vector<ExpressionTree> accepted_;
    Matrix train_x_;
    Matrix val_x_;
    Matrix train_terminals_;
    Matrix val_terminals_;
    Labels train_y_;
    Labels val_y_;
    std::vector<ColumnOrder> order_;
    mutable std::atomic<std::size_t> trainings_{0};
};

} // namespace gpfeat
