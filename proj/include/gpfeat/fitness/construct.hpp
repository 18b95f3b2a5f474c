#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpfeat/common/error.hpp"
#include "gpfeat/common/rng.hpp"
#include "gpfeat/engine/config.hpp"
#include "gpfeat/engine/evolve.hpp"
#include "gpfeat/fitness/cache.hpp"
#include "gpfeat/fitness/fitness.hpp"

namespace gpfeat {

inline constexpr int kConstructionSchemaVersion = 1;

struct AcceptedFeature {
    std::size_t iteration = 0; // 1-based
    ExpressionTree tree;
    std::string expr; // over the terminal names of its iteration
    double validation_metric = 0.0; // after appending this feature
};

struct ConstructionResult {
    double baseline_validation_metric = 0.0;
    std::vector<AcceptedFeature> accepted;
    std::vector<RunLog> run_logs;

    std::vector<ExpressionTree> accepted_trees() const
    {
        std::vector<ExpressionTree> out;
        out.reserve(accepted.size());
        for (const auto& a : accepted) {
            out.push_back(a.tree);
        }
        return out;
    }
};

inline FitnessSettings fitness_settings(const EvolutionConfig& config, const GBTHyperparams& hyper, Metric metric)
{
    FitnessSettings s;
    s.hyper = hyper;
    s.metric = metric;
    s.lambda = config.lambda;
    s.invalid_penalty = config.invalid_penalty;
    return s;
}

inline std::uint64_t iteration_seed(std::uint64_t seed, std::size_t iteration) { return derive_seed(seed, "iteration", iteration); }

// Runs config.iterations GP runs. Each run's fitness closes over the features
// accepted so far; the run's hall-of-fame best is appended before the next one.
// An empty `scorer` selects the gradient-boosted classifier.
inline ConstructionResult iterative_construct(const Dataset& data, const EvolutionConfig& config, const GBTHyperparams& hyper,
                                              Metric metric, const RunOptions& options = {}, const HoldoutScorer& scorer = {})
{
    config.validate();
    hyper.validate();
    check_metric_compatible(metric, data.labels.kind());
    const auto settings = fitness_settings(config, hyper, metric);
    auto makeContext = [&](std::vector<ExpressionTree> accepted) {
        return std::make_unique<FitnessContext>(data, std::move(accepted), settings, config.accepted_as_terminals,
                                                scorer ? scorer : gbt_scorer(hyper, metric));
    };

    ConstructionResult result;
    auto context = makeContext({});
    result.baseline_validation_metric = context->baseline_metric();

    FitnessCache cache;
    for (std::size_t i = 1; i <= config.iterations; ++i) {
        cache.clear();
        RunOptions runOptions = options;
        runOptions.label = options.label + " iter " + std::to_string(i);
        RunLog log;
        try {
            const CachedFitness<FitnessContext> fitness(*context, cache, context->terminals(), i);
            log = evolve_one_run(config, context->terminals(), fitness, iteration_seed(config.seed, i), runOptions);
        } catch (const std::exception& ex) {
            throw EvolutionError("iteration " + std::to_string(i) + ": " + ex.what());
        }
        const auto& best = log.hall_of_fame.front();
        AcceptedFeature accepted{i, best.tree, best.expr, 0.0};
        result.run_logs.push_back(std::move(log));

        auto trees = result.accepted_trees();
        trees.push_back(accepted.tree);
        context = makeContext(std::move(trees));
        accepted.validation_metric = context->baseline_metric();
        result.accepted.push_back(std::move(accepted));
    }
    return result;
}

// Accepted expressions with their metrics plus the caller's config echo.
// Run logs are persisted separately as JSONL.
inline nlohmann::ordered_json construction_to_json(const ConstructionResult& result, const nlohmann::ordered_json& configEcho)
{
    nlohmann::ordered_json j;
    j["schema_version"] = kConstructionSchemaVersion;
    j["baseline_validation_metric"] = result.baseline_validation_metric;
    auto accepted = nlohmann::ordered_json::array();
    for (const auto& a : result.accepted) {
        nlohmann::ordered_json e;
        e["iteration"] = a.iteration;
        e["expr"] = a.expr;
        e["validation_metric"] = a.validation_metric;
        accepted.push_back(std::move(e));
    }
    j["accepted"] = std::move(accepted);
    j["config"] = configEcho;
    return j;
}

// Restores accepted features (without run logs). `terminals` must name every
// column the expressions refer to.
inline ConstructionResult construction_from_json(const nlohmann::json& j, const FeatureSet& terminals)
{
    try {
        if (j.at("schema_version").get<int>() != kConstructionSchemaVersion) {
            throw ConfigError("unsupported construction schema_version");
        }
        ConstructionResult r;
        r.baseline_validation_metric = j.at("baseline_validation_metric").get<double>();
        for (const auto& e : j.at("accepted")) {
            AcceptedFeature a;
            a.iteration = e.at("iteration").get<std::size_t>();
            a.expr = e.at("expr").get<std::string>();
            a.tree = parse(a.expr, terminals);
            a.validation_metric = e.at("validation_metric").get<double>();
            r.accepted.push_back(std::move(a));
        }
        return r;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(std::string("malformed construction document: ") + ex.what());
    }
}

} // namespace gpfeat
