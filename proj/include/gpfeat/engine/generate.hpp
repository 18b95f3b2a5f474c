#pragma once

#include <cstddef>
#include <vector>

#include "gpfeat/common/error.hpp"
#include "gpfeat/common/rng.hpp"
#include "gpfeat/engine/config.hpp"
#include "gpfeat/engine/individual.hpp"
#include "gpfeat/exprtree/format.hpp"
#include "gpfeat/exprtree/operators.hpp"
#include "gpfeat/exprtree/tree.hpp"

namespace gpfeat {

// Random tree construction over a fixed terminal set: `feature_count` feature
// leaves plus an ephemeral-constant generator, each equally likely.
class TreeGenerator {
public:
    TreeGenerator(std::size_t featureCount, double constantMin, double constantMax)
        : feature_count_(featureCount), constant_min_(constantMin), constant_max_(constantMax)
    {
        if (featureCount == 0) {
            throw ConfigError("terminal set has no features");
        }
    }

    std::size_t feature_count() const noexcept { return feature_count_; }

    Node random_terminal(Rng& rng) const
    {
        const auto pick = uniform_index(rng, feature_count_ + 1);
        if (pick < feature_count_) {
            return Node::make_feature(pick);
        }
        return Node::make_constant(quantize_constant(uniform_real(rng, constant_min_, constant_max_)));
    }

    static OpCode random_operator(Rng& rng) { return kOperators[uniform_index(rng, kOperators.size())].code; }

    // Every leaf at exactly `depth`.
    ExpressionTree full(int depth, Rng& rng) const
    {
        std::vector<Node> nodes;
        build(nodes, 0, depth, depth, rng);
        return ExpressionTree(std::move(nodes));
    }

    // Leaves may stop early once `minDepth` is reached; never deeper than `depth`.
    ExpressionTree grow(int depth, int minDepth, Rng& rng) const
    {
        std::vector<Node> nodes;
        build(nodes, 0, depth, minDepth, rng);
        return ExpressionTree(std::move(nodes));
    }

private:
    void build(std::vector<Node>& nodes, int at, int depth, int earliestLeaf, Rng& rng) const
    {
        const double terminalRatio =
            static_cast<double>(feature_count_ + 1) / static_cast<double>(feature_count_ + 1 + kOperators.size());
        const bool leaf = at >= depth || (at >= earliestLeaf && bernoulli(rng, terminalRatio));
        if (leaf) {
            nodes.push_back(random_terminal(rng));
            return;
        }
        const OpCode op = random_operator(rng);
        nodes.push_back(Node::make_operator(op));
        for (int k = 0; k < spec_of(op).arity; ++k) {
            build(nodes, at + 1, depth, earliestLeaf, rng);
        }
    }

    std::size_t feature_count_;
    double constant_min_;
    double constant_max_;
};

enum class InitMethod { Full, Grow };

struct InitSlot {
    InitMethod method;
    int depth;
};

// Ramped half-and-half schedule: methods alternate full/grow and target depths
// cycle through the configured range, so each (method, depth) cell is equally filled.
inline InitSlot ramped_slot(std::size_t index, DepthRange range)
{
    const auto span = static_cast<std::size_t>(range.max - range.min + 1);
    return {index % 2 == 0 ? InitMethod::Full : InitMethod::Grow, range.min + static_cast<int>((index / 2) % span)};
}

inline std::vector<Individual> init_population(const EvolutionConfig& config, const TreeGenerator& generator, Rng& rng)
{
    if (config.population_size < 2) {
        throw ConfigError("population_size must be >= 2");
    }
    std::vector<Individual> population;
    population.reserve(config.population_size);
    for (std::size_t i = 0; i < config.population_size; ++i) {
        const auto slot = ramped_slot(i, config.init_depth);
        Individual ind;
        ind.tree = slot.method == InitMethod::Full ? generator.full(slot.depth, rng)
                                                   : generator.grow(slot.depth, config.init_depth.min, rng);
        population.push_back(std::move(ind));
    }
    return population;
}

} // namespace gpfeat
