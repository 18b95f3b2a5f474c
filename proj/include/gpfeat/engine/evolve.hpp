#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <ostream>
#include <string>
#include <vector>

#include "gpfeat/common/error.hpp"
#include "gpfeat/common/parallel.hpp"
#include "gpfeat/common/rng.hpp"
#include "gpfeat/engine/config.hpp"
#include "gpfeat/engine/early_stop.hpp"
#include "gpfeat/engine/generate.hpp"
#include "gpfeat/engine/hall_of_fame.hpp"
#include "gpfeat/engine/individual.hpp"
#include "gpfeat/engine/run_log.hpp"
#include "gpfeat/engine/selection.hpp"
#include "gpfeat/engine/variation.hpp"
#include "gpfeat/exprtree/format.hpp"

namespace gpfeat {

struct RunOptions {
    std::size_t workers = 1;
    std::ostream* progress = nullptr; // one line per generation when set
    std::string label = "run";
};

inline double population_variance(const std::vector<Individual>& population)
{
    double mean = 0.0;
    for (const auto& ind : population) {
        mean += ind.record().fitness;
    }
    mean /= static_cast<double>(population.size());
    double ss = 0.0;
    for (const auto& ind : population) {
        const double d = ind.record().fitness - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(population.size());
}

namespace detail {

template <typename Fitness>
class RunState {
public:
    RunState(const EvolutionConfig& config, const FeatureSet& terminals, Fitness& fitness, const RunOptions& options)
        : config_(config), terminals_(terminals), fitness_(fitness), options_(options), hof_(config.hall_of_fame_size) {}

    // Evaluates every individual without fitness. Scores are computed in
    // parallel, then logged in population order so evaluation indices never
    // depend on scheduling.
    void evaluate_pending(std::vector<Individual>& population, int generation)
    {
        std::vector<std::size_t> pending;
        for (std::size_t i = 0; i < population.size(); ++i) {
            if (!population[i].fitness) {
                pending.push_back(i);
            }
        }
        std::vector<std::string> exprs(pending.size());
        for (std::size_t k = 0; k < pending.size(); ++k) {
            exprs[k] = serialize(population[pending[k]].tree, terminals_);
        }

        std::vector<FitnessRecord> scores(pending.size());
        parallel_for(pending.size(), options_.workers, [&](std::size_t k) {
            try {
                scores[k] = fitness_(population[pending[k]].tree);
            } catch (const std::exception& ex) {
                throw EvolutionError(options_.label + ": fitness evaluation failed in generation " + std::to_string(generation) +
                                     " for " + exprs[k] + ": " + ex.what());
            }
        });

        for (std::size_t k = 0; k < pending.size(); ++k) {
            auto& ind = population[pending[k]];
            ind.fitness = scores[k];
            ++evaluations_;
            EvaluationRecord rec;
            rec.eval = evaluations_;
            rec.generation = generation;
            rec.fitness = scores[k].fitness;
            rec.raw_metric = scores[k].raw_metric;
            rec.nodes = ind.tree.node_count();
            rec.depth = ind.tree.depth();
            rec.expr = exprs[k];
            log_.evaluations.push_back(rec);
            hof_.offer(HallOfFameEntry{std::move(exprs[k]), ind.tree, scores[k], evaluations_});
        }
    }

    // Records per-generation statistics; returns the reason to stop, if any.
    std::optional<StopReason> close_generation(const std::vector<Individual>& population, int generation)
    {
        best_.push_back(hof_.best().record.fitness);
        variance_.push_back(population_variance(population));
        if (options_.progress) {
            *options_.progress << "[" << options_.label << "] gen " << generation << " evals " << evaluations_ << " best "
                               << hof_.best().record.fitness << " (" << hof_.best().expr << ") var " << variance_.back()
                               << '\n';
        }
        if (auto reason = check_early_stop(best_, variance_, config_)) {
            return reason;
        }
        if (generation >= config_.max_generations) {
            return StopReason::MaxGenerations;
        }
        return std::nullopt;
    }

    RunLog finish(int generationsCompleted, StopReason reason)
    {
        log_.generations_completed = generationsCompleted;
        log_.stop_reason = reason;
        log_.hall_of_fame = hof_.entries();
        log_.feature_names = terminals_.names();
        return std::move(log_);
    }

    std::uint64_t evaluations() const noexcept { return evaluations_; }

private:
    const EvolutionConfig& config_;
    const FeatureSet& terminals_;
    Fitness& fitness_;
    const RunOptions& options_;
    HallOfFame hof_;
    RunLog log_;
    std::uint64_t evaluations_ = 0;
    std::vector<double> best_;
    std::vector<double> variance_;
};

} // namespace detail

// One generational GP run. `fitness` maps a tree to its FitnessRecord and must be
// safe to call concurrently when options.workers > 1. The result is a pure
// function of (config, terminals, fitness, seed).
template <typename Fitness>
RunLog evolve_one_run(const EvolutionConfig& config, const FeatureSet& terminals, Fitness&& fitness, std::uint64_t seed,
                      const RunOptions& options = {})
{
    config.validate();
    if (terminals.empty()) {
        throw ConfigError("cannot evolve without base features");
    }

    RunStreams streams(seed);
    const TreeGenerator generator(terminals.size(), config.constant_min, config.constant_max);
    detail::RunState<std::remove_reference_t<Fitness>> state(config, terminals, fitness, options);

    auto population = init_population(config, generator, streams.init);
    state.evaluate_pending(population, 0);
    int generation = 0;
    auto stop = state.close_generation(population, generation);

    while (!stop) {
        ++generation;
        const auto birth = state.evaluations();

        std::vector<Individual> parents;
        parents.reserve(population.size());
        for (std::size_t i = 0; i < population.size(); ++i) {
            parents.push_back(tournament_select(population, config.tournament_size, streams.selection));
        }
        std::shuffle(parents.begin(), parents.end(), streams.selection);

        std::vector<Individual> offspring = parents;
        for (std::size_t i = 0; i + 1 < offspring.size(); i += 2) {
            if (bernoulli(streams.crossover, config.crossover_rate)) {
                auto [a, b] = subtree_crossover(offspring[i], offspring[i + 1], streams.crossover);
                offspring[i] = enforce_height_limit(std::move(a), parents[i], config.height_limit);
                offspring[i + 1] = enforce_height_limit(std::move(b), parents[i + 1], config.height_limit);
            }
        }
        for (auto& child : offspring) {
            if (bernoulli(streams.mutation, config.mutation_rate)) {
                auto mutant = subtree_mutate(child, generator, config.mutation_depth, streams.mutation);
                child = enforce_height_limit(std::move(mutant), child, config.height_limit);
            }
        }
        for (auto& child : offspring) {
            if (!child.fitness) {
                child.birth_evaluation = birth;
            }
        }

        population = std::move(offspring);
        state.evaluate_pending(population, generation);
        stop = state.close_generation(population, generation);
    }
    return state.finish(generation, *stop);
}

} // namespace gpfeat
