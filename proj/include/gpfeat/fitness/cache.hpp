#pragma once

#include <atomic>
#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "gpfeat/exprtree/format.hpp"
#include "gpfeat/fitness/record.hpp"

namespace gpfeat {

// Fitness records keyed by (iteration, canonical serialization). Concurrent
// inserts of the same key carry identical values, so the last write wins.
class FitnessCache {
public:
    std::optional<FitnessRecord> lookup(std::size_t iteration, const std::string& expr) const
    {
        std::lock_guard lock(mutex_);
        auto it = map_.find(key(iteration, expr));
        if (it == map_.end()) {
            ++misses_;
            return std::nullopt;
        }
        ++hits_;
        return it->second;
    }

    void store(std::size_t iteration, const std::string& expr, const FitnessRecord& record)
    {
        std::lock_guard lock(mutex_);
        map_[key(iteration, expr)] = record;
    }

    void clear()
    {
        std::lock_guard lock(mutex_);
        map_.clear();
    }

    std::size_t size() const
    {
        std::lock_guard lock(mutex_);
        return map_.size();
    }
    std::size_t hits() const noexcept { return hits_.load(); }
    std::size_t misses() const noexcept { return misses_.load(); }

private:
    static std::string key(std::size_t iteration, const std::string& expr) { return std::to_string(iteration) + '|' + expr; }

    mutable std::mutex mutex_;
    std::unordered_map<std::string, FitnessRecord> map_;
    mutable std::atomic<std::size_t> hits_{0};
    mutable std::atomic<std::size_t> misses_{0};
};

// Wraps a fitness function so identical trees within one iteration are scored once.
template <typename Fitness>
class CachedFitness {
public:
    CachedFitness(const Fitness& fitness, FitnessCache& cache, const FeatureSet& terminals, std::size_t iteration)
        : fitness_(fitness), cache_(cache), terminals_(terminals), iteration_(iteration) {}

    FitnessRecord operator()(const ExpressionTree& tree) const
    {
        const auto expr = serialize(tree, terminals_);
        if (auto hit = cache_.lookup(iteration_, expr)) {
            return *hit;
        }
        const FitnessRecord record = fitness_(tree);
        cache_.store(iteration_, expr, record);
        return record;
    }

private:
    const Fitness& fitness_;
    FitnessCache& cache_;
    const FeatureSet& terminals_;
    std::size_t iteration_;
};

} // namespace gpfeat
