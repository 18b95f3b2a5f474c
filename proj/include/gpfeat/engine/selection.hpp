#pragma once

#include <span>

#include "gpfeat/common/error.hpp"
#include "gpfeat/common/rng.hpp"
#include "gpfeat/engine/individual.hpp"

namespace gpfeat {

// Best contestant under better_than; contestants must be evaluated.
inline const Individual& tournament_winner(std::span<const Individual* const> contestants)
{
    if (contestants.empty()) {
        throw ContractViolation("tournament needs at least one contestant");
    }
    const Individual* best = contestants.front();
    best->record();
    for (const auto* c : contestants.subspan(1)) {
        if (better_than(*c, *best)) {
            best = c;
        }
    }
    return *best;
}

// Draws `size` contestants uniformly with replacement.
inline const Individual& tournament_select(std::span<const Individual> population, std::size_t size, Rng& rng)
{
    if (population.empty()) {
        throw ContractViolation("cannot select from an empty population");
    }
    for (const auto& ind : population) {
        if (!ind.fitness) {
            throw ContractViolation("tournament over a population with unevaluated individuals");
        }
    }
    std::vector<const Individual*> contestants;
    contestants.reserve(size);
    for (std::size_t k = 0; k < size; ++k) {
        contestants.push_back(&population[uniform_index(rng, population.size())]);
    }
    return tournament_winner(contestants);
}

} // namespace gpfeat
