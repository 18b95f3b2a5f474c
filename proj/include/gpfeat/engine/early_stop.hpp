#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gpfeat/common/error.hpp"
#include "gpfeat/engine/config.hpp"

namespace gpfeat {

enum class StopReason { MaxGenerations, Stagnation, Convergence };

inline std::string_view to_string(StopReason r)
{
    switch (r) {
    case StopReason::MaxGenerations: return "maxGenerations";
    case StopReason::Stagnation: return "stagnation";
    case StopReason::Convergence: return "convergence";
    }
    return "unknown";
}

inline StopReason stop_reason_from_string(std::string_view s)
{
    if (s == "maxGenerations") return StopReason::MaxGenerations;
    if (s == "stagnation") return StopReason::Stagnation;
    if (s == "convergence") return StopReason::Convergence;
    throw ConfigError("unknown stop reason '" + std::string(s) + "'");
}

// Both sequences are indexed by generation, starting with the initial population.
// Stagnation: the best-so-far has not strictly increased in each of the last
// `stagnation_generations` generations. Convergence: population fitness variance
// below the threshold in each of the last `convergence_window` generations.
inline std::optional<StopReason> check_early_stop(std::span<const double> bestPerGeneration,
                                                  std::span<const double> variancePerGeneration,
                                                  const EvolutionConfig& config)
{
    if (bestPerGeneration.size() != variancePerGeneration.size()) {
        throw ContractViolation("early-stop sequences must be aligned by generation");
    }

    int flat = 0;
    if (!bestPerGeneration.empty()) {
        double bestSoFar = bestPerGeneration.front();
        for (std::size_t g = 1; g < bestPerGeneration.size(); ++g) {
            if (bestPerGeneration[g] > bestSoFar) {
                bestSoFar = bestPerGeneration[g];
                flat = 0;
            } else {
                ++flat;
            }
        }
    }
    if (flat >= config.stagnation_generations) {
        return StopReason::Stagnation;
    }

    int low = 0;
    for (auto it = variancePerGeneration.rbegin(); it != variancePerGeneration.rend() && *it < config.convergence_variance_threshold; ++it) {
        ++low;
    }
    if (low >= config.convergence_window) {
        return StopReason::Convergence;
    }
    return std::nullopt;
}

} // namespace gpfeat
