#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpfeat/analysis/cooccurrence.hpp"
#include "gpfeat/analysis/report.hpp"
#include "gpfeat/analysis/top.hpp"
#include "gpfeat/analysis/trajectory.hpp"
#include "gpfeat/classifier/bootstrap.hpp"
#include "gpfeat/cli/config.hpp"
#include "gpfeat/data/csv.hpp"
#include "gpfeat/engine/run_log.hpp"
#include "gpfeat/fitness/construct.hpp"
#include "gpfeat/fitness/fitness.hpp"

namespace gpfeat {

namespace fs = std::filesystem;

namespace detail {

inline void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    body(out);
    out.flush();
    if (!out) {
        throw std::runtime_error("error while writing " + path.string());
    }
}

inline void ensure_directory(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw ConfigError("cannot create output directory " + dir.string());
    }
}

inline nlohmann::ordered_json metric_result_json(const MetricResult& r)
{
    nlohmann::ordered_json j;
    j["point"] = r.point;
    j["ci_low"] = r.ci_low;
    j["ci_high"] = r.ci_high;
    j["formatted"] = format_metric_result(r);
    return j;
}

inline BootstrapOptions test_bootstrap_options(const RunConfig& config)
{
    BootstrapOptions b;
    b.resamples = config.bootstrap_resamples;
    b.level = config.bootstrap_level;
    b.seed = derive_seed(config.seed, "test-bootstrap");
    b.workers = config.effective_workers();
    return b;
}

inline MetricResult test_metric(const Dataset& data, std::span<const ExpressionTree> accepted, const RunConfig& config)
{
    const auto h = holdout_evaluation(data, accepted, config.gbt, config.metric, data.splits.test);
    return bootstrap_ci(h.scores, h.labels, config.metric, test_bootstrap_options(config));
}

} // namespace detail

// One canonical prefix expression per non-blank line; '#' starts a comment
// line. With accepted_as_terminals, line j may refer to gp1..gp{j-1}.
inline std::vector<ExpressionTree> read_expressions(std::istream& in, const std::string& source, const Dataset& data,
                                                    bool acceptedAsTerminals)
{
    std::vector<ExpressionTree> trees;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const auto text = csv::trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        const auto names = terminal_names(data, trees.size(), acceptedAsTerminals);
        try {
            trees.push_back(parse(text, names));
        } catch (const ParseError& ex) {
            throw ConfigError(source + ":" + std::to_string(lineNo) + ": " + ex.what());
        }
    }
    return trees;
}

// Constructs composite features and writes run logs, the accepted expressions,
// test metrics with bootstrap intervals and a construction record.
inline int cmd_evolve(const RunConfig& config, const fs::path& outDir, std::ostream& progress)
{
    detail::ensure_directory(outDir);
    const auto data = config.load_dataset();
    RunOptions options;
    options.workers = config.effective_workers();
    options.progress = &progress;
    options.label = "evolve";
    const auto result = iterative_construct(data, config.evolution, config.gbt, config.metric, options);

    for (std::size_t i = 0; i < result.run_logs.size(); ++i) {
        detail::write_file(outDir / ("runlog_" + std::to_string(i + 1) + ".jsonl"),
                           [&](std::ostream& out) { write_run_log(out, result.run_logs[i]); });
    }
    detail::write_file(outDir / "features.txt", [&](std::ostream& out) {
        for (const auto& a : result.accepted) {
            out << a.expr << '\n';
        }
    });

    const auto trees = result.accepted_trees();
    nlohmann::ordered_json metrics;
    metrics["schema_version"] = 1;
    metrics["metric"] = std::string(to_string(config.metric));
    metrics["seed"] = config.seed;
    metrics["rows"] = {{"train", data.splits.train.size()}, {"validation", data.splits.validation.size()}, {"test", data.splits.test.size()}};
    nlohmann::ordered_json baseline;
    nlohmann::ordered_json augmented;
    baseline["validation"] = result.baseline_validation_metric;
    augmented["validation"] = result.accepted.empty() ? result.baseline_validation_metric : result.accepted.back().validation_metric;
    if (data.splits.test.empty()) {
        baseline["test"] = nullptr;
        augmented["test"] = nullptr;
    } else {
        baseline["test"] = detail::metric_result_json(detail::test_metric(data, {}, config));
        augmented["test"] = detail::metric_result_json(detail::test_metric(data, trees, config));
    }
    metrics["baseline"] = baseline;
    metrics["augmented"] = augmented;
    metrics["accepted"] = result.accepted.size();
    detail::write_file(outDir / "metrics.json", [&](std::ostream& out) { out << metrics.dump(2) << '\n'; });
    detail::write_file(outDir / "construction.json",
                       [&](std::ostream& out) { out << construction_to_json(result, config.echo()).dump(2) << '\n'; });
    progress << "evolve: " << result.accepted.size() << " feature(s) accepted; outputs in " << outDir.string() << '\n';
    return 0;
}

// Reports derived from run logs alone.
inline int cmd_analyze(const RunConfig& config, const std::vector<std::string>& logPaths, const fs::path& outDir, std::ostream& progress)
{
    if (logPaths.empty()) {
        throw ConfigError("analyze needs at least one run log");
    }
    FeatureSet names;
    std::vector<RunLog> logs;
    for (const auto& path : logPaths) {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open run log " + path);
        }
        logs.push_back(read_run_log(in, names, path));
        if (logs.back().evaluations.empty()) {
            throw ConfigError(path + ": run log has no evaluations");
        }
    }
    detail::ensure_directory(outDir);

    const auto top = top_expressions(logs, config.analysis.top_k);
    detail::write_file(outDir / "top_expressions.tsv", [&](std::ostream& out) { write_top_expressions(out, top, names); });

    const auto pairs = feature_pair_cooccurrence(top, names.names());
    const auto opFeat = operator_feature_stats(top, names.names(), config.analysis.operator_mode);
    detail::write_file(outDir / "feature_pairs.csv", [&](std::ostream& out) { write_combined_triangle_csv(out, pairs); });
    detail::write_file(outDir / "operator_feature_counts.csv", [&](std::ostream& out) { write_count_matrix_csv(out, opFeat); });
    detail::write_file(outDir / "operator_feature_means.csv", [&](std::ostream& out) { write_mean_matrix_csv(out, opFeat); });
    if (config.analysis.svg) {
        detail::write_file(outDir / "feature_pairs.svg",
                           [&](std::ostream& out) { write_heatmap_svg(out, pairs, "Feature-feature co-occurrence"); });
        detail::write_file(outDir / "operator_feature.svg",
                           [&](std::ostream& out) { write_heatmap_svg(out, opFeat, "Operator-feature co-occurrence"); });
    }

    nlohmann::ordered_json summary;
    summary["schema_version"] = kReportSchemaVersion;
    summary["top_k"] = config.analysis.top_k;
    summary["expressions_analyzed"] = top.size();
    summary["operator_mode"] = to_string(config.analysis.operator_mode);
    auto runs = nlohmann::ordered_json::array();
    std::vector<double> bestMetric;
    std::vector<double> bestFitness;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const auto series = trajectory(logs[i]);
        detail::write_file(outDir / ("trajectory_" + std::to_string(i + 1) + ".csv"),
                           [&](std::ostream& out) { write_trajectory_csv(out, series); });
        nlohmann::ordered_json r;
        r["log"] = logPaths[i];
        r["evaluations"] = logs[i].evaluations.size();
        r["generations_completed"] = logs[i].generations_completed;
        r["stop_reason"] = std::string(to_string(logs[i].stop_reason));
        if (!logs[i].hall_of_fame.empty()) {
            const auto& best = logs[i].hall_of_fame.front();
            r["best_expr"] = best.expr;
            r["best_fitness"] = best.record.fitness;
            r["best_raw_metric"] = best.record.raw_metric;
            bestMetric.push_back(best.record.raw_metric);
            bestFitness.push_back(best.record.fitness);
        }
        runs.push_back(std::move(r));
    }
    summary["runs"] = std::move(runs);
    if (!bestMetric.empty()) {
        summary["best_raw_metric"] = to_json(distribution_summary(bestMetric));
        summary["best_fitness"] = to_json(distribution_summary(bestFitness));
    }
    detail::write_file(outDir / "summary.json", [&](std::ostream& out) { out << summary.dump(2) << '\n'; });
    progress << "analyze: " << logs.size() << " log(s), " << top.size() << " expression(s); outputs in " << outDir.string() << '\n';
    return 0;
}

// Test metric of the classifier on base features plus the listed expressions,
// printed as "score [lo–hi]".
inline int cmd_eval(const RunConfig& config, const std::string& expressionsPath, std::ostream& out)
{
    const auto data = config.load_dataset();
    std::ifstream in(expressionsPath);
    if (!in) {
        throw ConfigError("cannot open expressions file " + expressionsPath);
    }
    const auto trees = read_expressions(in, expressionsPath, data, config.evolution.accepted_as_terminals);
    if (data.splits.test.empty()) {
        throw ConfigError("dataset has an empty test split");
    }
    out << format_metric_result(detail::test_metric(data, trees, config)) << '\n';
    return 0;
}

inline int cmd_synth(const RunConfig& config, const fs::path& outDir, std::ostream& progress)
{
    if (config.data.kind != DataSourceKind::Synthetic) {
        throw ConfigError("synth needs a synthetic data source");
    }
    detail::ensure_directory(outDir);
    const auto data = generate_synthetic(config.data.synthetic);
    detail::write_file(outDir / "features.csv", [&](std::ostream& out) { write_features_csv(out, data.names, data.raw); });
    detail::write_file(outDir / "labels.csv", [&](std::ostream& out) { write_labels_csv(out, data.labels); });
    detail::write_file(outDir / "splits.csv", [&](std::ostream& out) { write_splits_csv(out, data.splits, data.rows()); });
    progress << "synth: " << data.rows() << " rows, " << data.base_features() << " features; outputs in " << outDir.string() << '\n';
    return 0;
}

} // namespace gpfeat
