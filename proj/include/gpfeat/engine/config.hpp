#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "gpfeat/common/error.hpp"

namespace gpfeat {

struct DepthRange {
    int min = 0;
    int max = 0;
};

struct EvolutionConfig {
    std::size_t population_size = 100;
    int max_generations = 50;
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;
    std::size_t tournament_size = 3;
    int height_limit = 6;
    DepthRange init_depth{1, 3};
    DepthRange mutation_depth{0, 2};
    double constant_min = -2.0;
    double constant_max = 2.0;
    double lambda = 0.01;          // parsimony penalty per node
    double invalid_penalty = 1.0;  // subtracted when raw output had NaN/inf
    std::size_t iterations = 5;    // composite features constructed (M)
    int stagnation_generations = 15;
    double convergence_variance_threshold = 1e-4;
    int convergence_window = 5;
    std::uint64_t seed = 0;
    std::size_t hall_of_fame_size = 500;
    // Later iterations may use previously accepted composites as terminals.
    bool accepted_as_terminals = false;

    // The two population sizes used for the reported experiments.
    static EvolutionConfig gp100() { return {}; }
    static EvolutionConfig gp500()
    {
        EvolutionConfig c;
        c.population_size = 500;
        return c;
    }

    void validate() const
    {
        auto fail = [](const std::string& msg) { throw ConfigError("evolution config: " + msg); };
        auto isRate = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (population_size < 2) fail("population_size must be >= 2");
        if (max_generations < 0) fail("max_generations must be >= 0");
        if (!isRate(crossover_rate)) fail("crossover_rate must be in [0,1]");
        if (!isRate(mutation_rate)) fail("mutation_rate must be in [0,1]");
        if (tournament_size < 1) fail("tournament_size must be >= 1");
        if (height_limit < 1) fail("height_limit must be >= 1");
        if (init_depth.min < 0 || init_depth.min > init_depth.max || init_depth.max > height_limit) {
            fail("init_depth must satisfy 0 <= min <= max <= height_limit");
        }
        if (mutation_depth.min < 0 || mutation_depth.min > mutation_depth.max || mutation_depth.max > height_limit) {
            fail("mutation_depth must satisfy 0 <= min <= max <= height_limit");
        }
        if (!(constant_min <= constant_max)) fail("constant range is empty");
        if (lambda < 0.0) fail("lambda must be >= 0");
        if (invalid_penalty < 0.0) fail("invalid_penalty must be >= 0");
        if (iterations < 1) fail("iterations must be >= 1");
        if (stagnation_generations < 1) fail("stagnation_generations must be >= 1");
        if (convergence_window < 1) fail("convergence_window must be >= 1");
        if (hall_of_fame_size < 1) fail("hall_of_fame_size must be >= 1");
    }
};

} // namespace gpfeat
