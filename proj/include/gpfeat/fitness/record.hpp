#pragma once

#include <cstddef>

namespace gpfeat {

struct FitnessRecord {
    double fitness = 0.0;
    double raw_metric = 0.0; // validation ROC-AUC or accuracy
    std::size_t node_count = 0;
    bool had_non_finite = false;

    bool operator==(const FitnessRecord&) const = default;
};

// Penalized objective: metric minus lambda per node, minus a flat penalty when the
// candidate produced NaN or infinite values before sanitization.
inline FitnessRecord make_fitness_record(double rawMetric, std::size_t nodeCount, bool hadNonFinite, double lambda,
                                         double invalidPenalty = 1.0)
{
    FitnessRecord r;
    r.raw_metric = rawMetric;
    r.node_count = nodeCount;
    r.had_non_finite = hadNonFinite;
    r.fitness = rawMetric - lambda * static_cast<double>(nodeCount) - (hadNonFinite ? invalidPenalty : 0.0);
    return r;
}

} // namespace gpfeat
