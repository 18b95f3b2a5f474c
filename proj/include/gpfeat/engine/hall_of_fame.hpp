#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "gpfeat/exprtree/tree.hpp"
#include "gpfeat/fitness/record.hpp"

namespace gpfeat {

struct HallOfFameEntry {
    std::string expr; // canonical prefix serialization
    ExpressionTree tree;
    FitnessRecord record;
    std::uint64_t evaluation = 0; // 1-based evaluation index of first appearance
};

// Fitness descending, then fewer nodes, then earlier evaluation.
inline bool hof_before(const HallOfFameEntry& a, const HallOfFameEntry& b)
{
    if (a.record.fitness != b.record.fitness) {
        return a.record.fitness > b.record.fitness;
    }
    if (a.tree.node_count() != b.tree.node_count()) {
        return a.tree.node_count() < b.tree.node_count();
    }
    return a.evaluation < b.evaluation;
}

// Best `capacity` distinct expressions seen so far, independent of the population.
class HallOfFame {
public:
    explicit HallOfFame(std::size_t capacity) : capacity_(capacity) {}

    void offer(HallOfFameEntry entry)
    {
        if (!seen_.insert(entry.expr).second) {
            return;
        }
        if (entries_.size() == capacity_ && !hof_before(entry, entries_.back())) {
            return;
        }
        auto pos = std::upper_bound(entries_.begin(), entries_.end(), entry, hof_before);
        entries_.insert(pos, std::move(entry));
        if (entries_.size() > capacity_) {
            entries_.pop_back();
        }
    }

    const std::vector<HallOfFameEntry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    const HallOfFameEntry& best() const { return entries_.front(); }

private:
    std::size_t capacity_;
    std::vector<HallOfFameEntry> entries_;
    // Every expression ever offered. An evicted expression cannot re-qualify: the
    // entries that displaced it only ever get replaced by better ones.
    std::unordered_set<std::string> seen_;
};

} // namespace gpfeat
