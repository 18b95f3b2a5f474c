#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpfeat/common/error.hpp"
#include "gpfeat/engine/early_stop.hpp"
#include "gpfeat/engine/hall_of_fame.hpp"
#include "gpfeat/exprtree/format.hpp"

namespace gpfeat {

inline constexpr int kRunLogSchemaVersion = 1;

struct EvaluationRecord {
    std::uint64_t eval = 0; // 1-based, strictly increasing
    int generation = 0;
    double fitness = 0.0;
    double raw_metric = 0.0;
    std::size_t nodes = 0;
    int depth = 0;
    std::string expr;

    bool operator==(const EvaluationRecord&) const = default;
};

struct RunLog {
    std::vector<EvaluationRecord> evaluations;
    std::vector<HallOfFameEntry> hall_of_fame;
    int generations_completed = 0;
    StopReason stop_reason = StopReason::MaxGenerations;
    std::vector<std::string> feature_names; // terminal names the expressions refer to
};

inline void write_run_log(std::ostream& out, const RunLog& log)
{
    for (const auto& e : log.evaluations) {
        nlohmann::ordered_json j;
        j["eval"] = e.eval;
        j["gen"] = e.generation;
        j["fitness"] = e.fitness;
        j["raw_metric"] = e.raw_metric;
        j["nodes"] = e.nodes;
        j["depth"] = e.depth;
        j["expr"] = e.expr;
        out << j.dump() << '\n';
    }
    nlohmann::ordered_json summary;
    summary["summary"] = true;
    summary["schema_version"] = kRunLogSchemaVersion;
    summary["stop_reason"] = std::string(to_string(log.stop_reason));
    summary["generations_completed"] = log.generations_completed;
    summary["features"] = log.feature_names;
    auto hof = nlohmann::ordered_json::array();
    for (const auto& h : log.hall_of_fame) {
        nlohmann::ordered_json j;
        j["expr"] = h.expr;
        j["fitness"] = h.record.fitness;
        j["raw_metric"] = h.record.raw_metric;
        j["nodes"] = h.record.node_count;
        j["non_finite"] = h.record.had_non_finite;
        j["eval"] = h.evaluation;
        hof.push_back(std::move(j));
    }
    summary["hall_of_fame"] = std::move(hof);
    out << summary.dump() << '\n';
}

// Reads a JSON-lines run log. Expressions are parsed against `features`, which
// is extended with any names it lacks (the log's own feature list first, so
// column order follows the originating dataset). Errors name source and line.
inline RunLog read_run_log(std::istream& in, FeatureSet& features, const std::string& source = "<run log>")
{
    RunLog log;
    std::string line;
    std::size_t lineNo = 0;
    bool sawSummary = false;
    std::vector<std::pair<std::size_t, nlohmann::json>> hofRaw;

    auto fail = [&](const std::string& what) { throw ConfigError(source + ":" + std::to_string(lineNo) + ": " + what); };

    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) {
            continue;
        }
        if (sawSummary) {
            fail("record after summary");
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
            if (j.contains("summary")) {
                sawSummary = true;
                if (j.at("schema_version").get<int>() != kRunLogSchemaVersion) {
                    fail("unsupported schema_version");
                }
                try {
                    log.stop_reason = stop_reason_from_string(j.at("stop_reason").get<std::string>());
                } catch (const ConfigError& ex) {
                    fail(ex.what());
                }
                log.generations_completed = j.at("generations_completed").get<int>();
                log.feature_names = j.at("features").get<std::vector<std::string>>();
                for (const auto& h : j.at("hall_of_fame")) {
                    hofRaw.emplace_back(lineNo, h);
                }
                continue;
            }
            EvaluationRecord e;
            e.eval = j.at("eval").get<std::uint64_t>();
            e.generation = j.at("gen").get<int>();
            e.fitness = j.at("fitness").get<double>();
            e.raw_metric = j.at("raw_metric").get<double>();
            e.nodes = j.at("nodes").get<std::size_t>();
            e.depth = j.at("depth").get<int>();
            e.expr = j.at("expr").get<std::string>();
            if (!log.evaluations.empty() && e.eval <= log.evaluations.back().eval) {
                fail("evaluation index not strictly increasing");
            }
            log.evaluations.push_back(std::move(e));
        } catch (const nlohmann::json::exception& ex) {
            fail(std::string("malformed record: ") + ex.what());
        }
    }
    if (!sawSummary) {
        ++lineNo;
        fail("missing summary record");
    }

    for (const auto& name : log.feature_names) {
        features.find_or_add(name);
    }
    for (auto& [at, h] : hofRaw) {
        lineNo = at;
        try {
            HallOfFameEntry entry;
            entry.expr = h.at("expr").get<std::string>();
            entry.tree = parse_open(entry.expr, features);
            entry.record.fitness = h.at("fitness").get<double>();
            entry.record.raw_metric = h.at("raw_metric").get<double>();
            entry.record.node_count = h.at("nodes").get<std::size_t>();
            entry.record.had_non_finite = h.value("non_finite", false);
            entry.evaluation = h.at("eval").get<std::uint64_t>();
            log.hall_of_fame.push_back(std::move(entry));
        } catch (const nlohmann::json::exception& ex) {
            fail(std::string("malformed hall-of-fame entry: ") + ex.what());
        } catch (const ParseError& ex) {
            fail(std::string("bad expression: ") + ex.what());
        }
    }
    return log;
}

} // namespace gpfeat
