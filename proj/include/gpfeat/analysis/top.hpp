#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "gpfeat/engine/hall_of_fame.hpp"
#include "gpfeat/engine/run_log.hpp"

namespace gpfeat {

// Hall-of-fame entries of all runs, deduplicated by serialization and ordered
// best first. A duplicate keeps its best-ranked occurrence.
inline std::vector<HallOfFameEntry> top_expressions(std::span<const RunLog> logs, std::size_t k = 500)
{
    std::vector<HallOfFameEntry> merged;
    for (const auto& log : logs) {
        merged.insert(merged.end(), log.hall_of_fame.begin(), log.hall_of_fame.end());
    }
    std::stable_sort(merged.begin(), merged.end(), hof_before);
    std::vector<HallOfFameEntry> out;
    std::unordered_set<std::string> seen;
    for (auto& e : merged) {
        if (out.size() == k) {
            break;
        }
        if (seen.insert(e.expr).second) {
            out.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace gpfeat
