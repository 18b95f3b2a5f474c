#pragma once

#include <cstdint>
#include <optional>

#include "gpfeat/common/error.hpp"
#include "gpfeat/exprtree/tree.hpp"
#include "gpfeat/fitness/record.hpp"

namespace gpfeat {

struct Individual {
    ExpressionTree tree;
    std::optional<FitnessRecord> fitness; // reset by every variation
    std::uint64_t birth_evaluation = 0;   // evaluations completed when the tree was created

    const FitnessRecord& record() const
    {
        if (!fitness) {
            throw ContractViolation("individual has not been evaluated");
        }
        return *fitness;
    }
};

// Strict "a is better than b": higher fitness, then fewer nodes, then older.
inline bool better_than(const Individual& a, const Individual& b)
{
    const auto& fa = a.record();
    const auto& fb = b.record();
    if (fa.fitness != fb.fitness) {
        return fa.fitness > fb.fitness;
    }
    if (a.tree.node_count() != b.tree.node_count()) {
        return a.tree.node_count() < b.tree.node_count();
    }
    return a.birth_evaluation < b.birth_evaluation;
}

} // namespace gpfeat
