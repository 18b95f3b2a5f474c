#pragma once

#include <utility>

#include "gpfeat/common/rng.hpp"
#include "gpfeat/engine/config.hpp"
#include "gpfeat/engine/generate.hpp"
#include "gpfeat/engine/individual.hpp"

namespace gpfeat {

// Swaps the subtree at `pointA` of `a` with the subtree at `pointB` of `b`.
inline std::pair<ExpressionTree, ExpressionTree> swap_subtrees(const ExpressionTree& a, std::size_t pointA,
                                                               const ExpressionTree& b, std::size_t pointB)
{
    return {a.replace_subtree(pointA, b.subtree(pointB)), b.replace_subtree(pointB, a.subtree(pointA))};
}

// One-point subtree crossover with crossover points drawn uniformly over all nodes.
inline std::pair<Individual, Individual> subtree_crossover(const Individual& a, const Individual& b, Rng& rng)
{
    const auto pa = uniform_index(rng, a.tree.node_count());
    const auto pb = uniform_index(rng, b.tree.node_count());
    auto [ta, tb] = swap_subtrees(a.tree, pa, b.tree, pb);
    Individual ca{std::move(ta), std::nullopt, a.birth_evaluation};
    Individual cb{std::move(tb), std::nullopt, b.birth_evaluation};
    return {std::move(ca), std::move(cb)};
}

// Replaces a uniformly chosen node with a fresh full tree whose depth is uniform
// over `depthRange`.
inline Individual subtree_mutate(const Individual& a, const TreeGenerator& generator, DepthRange depthRange, Rng& rng)
{
    const auto point = uniform_index(rng, a.tree.node_count());
    const int depth = depthRange.min + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(depthRange.max - depthRange.min + 1)));
    return Individual{a.tree.replace_subtree(point, generator.full(depth, rng)), std::nullopt, a.birth_evaluation};
}

// Static height limit: a child deeper than the limit is discarded in favour of
// the individual it was derived from.
inline Individual enforce_height_limit(Individual child, const Individual& parent, int heightLimit)
{
    if (child.tree.depth() <= heightLimit) {
        return child;
    }
    return parent;
}

} // namespace gpfeat
