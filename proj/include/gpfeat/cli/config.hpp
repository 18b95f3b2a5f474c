#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <thread>

#include <json.hpp>

#include "gpfeat/analysis/cooccurrence.hpp"
#include "gpfeat/classifier/gbt.hpp"
#include "gpfeat/classifier/metrics.hpp"
#include "gpfeat/classifier/model_io.hpp"
#include "gpfeat/common/error.hpp"
#include "gpfeat/common/parallel.hpp"
#include "gpfeat/data/csv.hpp"
#include "gpfeat/data/synthetic.hpp"
#include "gpfeat/engine/config.hpp"

namespace gpfeat {

// `key = value` lines; '#' or ';' starts a comment line. Keys are unique.
class KeyValueDocument {
public:
    struct Entry {
        std::string value;
        std::size_t line = 0;
    };

    static KeyValueDocument parse(std::istream& in, const std::string& source)
    {
        KeyValueDocument doc;
        doc.source_ = source;
        std::string raw;
        std::size_t lineNo = 0;
        while (std::getline(in, raw)) {
            ++lineNo;
            const auto line = csv::trim(raw);
            if (line.empty() || line.front() == '#' || line.front() == ';') {
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string_view::npos) {
                throw ConfigError(source + ":" + std::to_string(lineNo) + ": expected 'key = value'");
            }
            const std::string key(csv::trim(line.substr(0, eq)));
            const std::string value(csv::trim(line.substr(eq + 1)));
            if (key.empty()) {
                throw ConfigError(source + ":" + std::to_string(lineNo) + ": empty key");
            }
            if (!doc.entries_.emplace(key, Entry{value, lineNo}).second) {
                throw ConfigError(source + ":" + std::to_string(lineNo) + ": duplicate key '" + key + "'");
            }
        }
        return doc;
    }

    static KeyValueDocument load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in) {
            throw ConfigError("cannot open config file " + path);
        }
        return parse(in, path);
    }

    const std::string& source() const noexcept { return source_; }
    const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

private:
    std::string source_ = "<config>";
    std::map<std::string, Entry> entries_;
};

namespace detail {

// Typed access to a KeyValueDocument that remembers which keys were read, so
// leftovers (usually typos) can be rejected.
class KeyReader {
public:
    explicit KeyReader(const KeyValueDocument& doc) : doc_(doc) {}

    bool has(const std::string& key) const { return doc_.entries().count(key) > 0; }

    bool get(const std::string& key, std::string& out)
    {
        auto it = doc_.entries().find(key);
        if (it == doc_.entries().end()) {
            return false;
        }
        used_.insert(key);
        out = it->second.value;
        return true;
    }

    template <typename T>
    bool get_number(const std::string& key, T& out)
    {
        std::string v;
        if (!get(key, v)) {
            return false;
        }
        const char* begin = v.data();
        const char* end = v.data() + v.size();
        if (std::is_floating_point_v<T> && v.size() > 1 && v[0] == '+') {
            ++begin;
        }
        auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc{} || ptr != end || v.empty()) {
            fail(key, "invalid number '" + v + "'");
        }
        return true;
    }

    bool get_bool(const std::string& key, bool& out)
    {
        std::string v;
        if (!get(key, v)) {
            return false;
        }
        if (v == "true" || v == "yes" || v == "1" || v == "on") {
            out = true;
        } else if (v == "false" || v == "no" || v == "0" || v == "off") {
            out = false;
        } else {
            fail(key, "invalid boolean '" + v + "'");
        }
        return true;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const
    {
        const auto it = doc_.entries().find(key);
        const auto line = it == doc_.entries().end() ? std::string{} : ":" + std::to_string(it->second.line);
        throw ConfigError(doc_.source() + line + ": " + key + ": " + what);
    }

    void reject_unused() const
    {
        for (const auto& [key, entry] : doc_.entries()) {
            if (!used_.count(key)) {
                throw ConfigError(doc_.source() + ":" + std::to_string(entry.line) + ": unknown key '" + key + "'");
            }
        }
    }

private:
    const KeyValueDocument& doc_;
    std::set<std::string> used_;
};

} // namespace detail

enum class DataSourceKind { Csv, Synthetic };

struct DatasetSource {
    DataSourceKind kind = DataSourceKind::Synthetic;
    std::string features; // CSV paths, relative ones resolved against base_dir
    std::string labels;
    std::string splits;
    std::string base_dir;
    LabelKind label_kind = LabelKind::Multilabel;
    SyntheticSpec synthetic;

    std::string resolve(const std::string& path) const
    {
        const std::filesystem::path p(path);
        return p.is_absolute() || base_dir.empty() ? path : (std::filesystem::path(base_dir) / p).string();
    }
};

struct AnalysisSettings {
    std::size_t top_k = 500;
    OperatorFeatureMode operator_mode = OperatorFeatureMode::Presence;
    bool svg = true;
};

inline std::string to_string(OperatorFeatureMode m) { return m == OperatorFeatureMode::Presence ? "presence" : "adjacency"; }

inline std::string to_string(LabelKind k) { return k == LabelKind::Multilabel ? "multilabel" : "multiclass"; }

struct RunConfig {
    DatasetSource data;
    EvolutionConfig evolution;
    GBTHyperparams gbt = GBTHyperparams::multilabel_preset();
    Metric metric = Metric::RocAucMacro;
    std::uint64_t seed = 0;
    std::size_t workers = 0; // 0 = available cores
    std::size_t bootstrap_resamples = 2000;
    double bootstrap_level = 0.95;
    AnalysisSettings analysis;

    std::size_t effective_workers() const { return workers ? workers : default_worker_count(); }

    static RunConfig from_document(const KeyValueDocument& doc, const std::string& baseDir = {})
    {
        detail::KeyReader r(doc);
        RunConfig c;
        std::string s;

        r.get_number("seed", c.seed);
        r.get_number("workers", c.workers);

        // Dataset.
        c.data.base_dir = baseDir;
        const bool csvKeys = r.has("data.features") || r.has("data.labels") || r.has("data.splits");
        c.data.kind = csvKeys ? DataSourceKind::Csv : DataSourceKind::Synthetic;
        if (r.get("data.source", s)) {
            if (s == "csv") c.data.kind = DataSourceKind::Csv;
            else if (s == "synthetic") c.data.kind = DataSourceKind::Synthetic;
            else r.fail("data.source", "expected csv or synthetic");
        }
        r.get("data.features", c.data.features);
        r.get("data.labels", c.data.labels);
        r.get("data.splits", c.data.splits);
        if (r.get("data.label_kind", s)) {
            if (s == "multilabel" || s == "binary") c.data.label_kind = LabelKind::Multilabel;
            else if (s == "multiclass") c.data.label_kind = LabelKind::Multiclass;
            else r.fail("data.label_kind", "expected multilabel or multiclass");
        }
        auto& syn = c.data.synthetic;
        syn.seed = c.seed;
        r.get_number("synthetic.rows", syn.rows);
        r.get_number("synthetic.base_features", syn.base_features);
        r.get("synthetic.planted", syn.planted);
        if (r.get("synthetic.label_rule", s)) {
            if (s == "threshold") syn.rule = LabelRule::ThresholdBinary;
            else if (s == "quantile") syn.rule = LabelRule::QuantileMulticlass;
            else r.fail("synthetic.label_rule", "expected threshold or quantile");
        }
        r.get_number("synthetic.classes", syn.classes);
        r.get_number("synthetic.noise_std", syn.noise_std);
        r.get_number("synthetic.seed", syn.seed);
        if (c.data.kind == DataSourceKind::Synthetic) {
            c.data.label_kind = syn.rule == LabelRule::ThresholdBinary ? LabelKind::Multilabel : LabelKind::Multiclass;
        }

        // Evolution.
        auto& e = c.evolution;
        if (r.get("gp.preset", s)) {
            if (s == "gp100") e = EvolutionConfig::gp100();
            else if (s == "gp500") e = EvolutionConfig::gp500();
            else r.fail("gp.preset", "expected gp100 or gp500");
        }
        r.get_number("gp.population_size", e.population_size);
        r.get_number("gp.max_generations", e.max_generations);
        r.get_number("gp.crossover_rate", e.crossover_rate);
        r.get_number("gp.mutation_rate", e.mutation_rate);
        r.get_number("gp.tournament_size", e.tournament_size);
        r.get_number("gp.height_limit", e.height_limit);
        r.get_number("gp.init_depth_min", e.init_depth.min);
        r.get_number("gp.init_depth_max", e.init_depth.max);
        r.get_number("gp.mutation_depth_min", e.mutation_depth.min);
        r.get_number("gp.mutation_depth_max", e.mutation_depth.max);
        r.get_number("gp.constant_min", e.constant_min);
        r.get_number("gp.constant_max", e.constant_max);
        r.get_number("gp.lambda", e.lambda);
        r.get_number("gp.invalid_penalty", e.invalid_penalty);
        r.get_number("gp.iterations", e.iterations);
        r.get_number("gp.stagnation_generations", e.stagnation_generations);
        r.get_number("gp.convergence_variance", e.convergence_variance_threshold);
        r.get_number("gp.convergence_window", e.convergence_window);
        r.get_number("gp.hall_of_fame_size", e.hall_of_fame_size);
        r.get_bool("gp.accepted_as_terminals", e.accepted_as_terminals);
        e.seed = c.seed;

        // Classifier: the preset follows the label kind unless named explicitly.
        c.gbt = c.data.label_kind == LabelKind::Multiclass ? GBTHyperparams::multiclass_preset() : GBTHyperparams::multilabel_preset();
        if (r.get("gbt.preset", s)) {
            if (s == "multilabel") c.gbt = GBTHyperparams::multilabel_preset();
            else if (s == "multiclass") c.gbt = GBTHyperparams::multiclass_preset();
            else r.fail("gbt.preset", "expected multilabel or multiclass");
        }
        c.gbt.mode = c.data.label_kind == LabelKind::Multiclass ? BoostMode::Multiclass : BoostMode::OneVsRestMultilabel;
        r.get_number("gbt.n_estimators", c.gbt.n_estimators);
        r.get_number("gbt.max_depth", c.gbt.max_depth);
        r.get_number("gbt.learning_rate", c.gbt.learning_rate);
        r.get_number("gbt.min_samples_leaf", c.gbt.min_samples_leaf);

        c.metric = c.data.label_kind == LabelKind::Multiclass ? Metric::Accuracy : Metric::RocAucMacro;
        if (r.get("metric", s)) {
            try {
                c.metric = metric_from_string(s);
            } catch (const ConfigError& ex) {
                r.fail("metric", ex.what());
            }
        }

        r.get_number("bootstrap.resamples", c.bootstrap_resamples);
        r.get_number("bootstrap.level", c.bootstrap_level);

        r.get_number("analysis.top_k", c.analysis.top_k);
        if (r.get("analysis.operator_mode", s)) {
            if (s == "presence") c.analysis.operator_mode = OperatorFeatureMode::Presence;
            else if (s == "adjacency") c.analysis.operator_mode = OperatorFeatureMode::Adjacency;
            else r.fail("analysis.operator_mode", "expected presence or adjacency");
        }
        r.get_bool("analysis.svg", c.analysis.svg);

        r.reject_unused();
        c.validate();
        return c;
    }

    static RunConfig load(const std::string& path)
    {
        const auto doc = KeyValueDocument::load(path);
        return from_document(doc, std::filesystem::path(path).parent_path().string());
    }

    void validate() const
    {
        if (data.kind == DataSourceKind::Csv && (data.features.empty() || data.labels.empty() || data.splits.empty())) {
            throw ConfigError("csv data source needs data.features, data.labels and data.splits");
        }
        evolution.validate();
        gbt.validate();
        check_metric_compatible(metric, data.label_kind);
        if (bootstrap_resamples < 1) {
            throw ConfigError("bootstrap.resamples must be >= 1");
        }
        if (!(bootstrap_level > 0.0 && bootstrap_level < 1.0)) {
            throw ConfigError("bootstrap.level must be in (0, 1)");
        }
        if (analysis.top_k < 1) {
            throw ConfigError("analysis.top_k must be >= 1");
        }
    }

    Dataset load_dataset() const
    {
        if (data.kind == DataSourceKind::Synthetic) {
            return generate_synthetic(data.synthetic);
        }
        return load_csv(data.resolve(data.features), data.resolve(data.labels), data.resolve(data.splits), data.label_kind);
    }

    // Every setting that influences results. The worker count is left out:
    // outputs do not depend on it.
    nlohmann::ordered_json echo() const
    {
        nlohmann::ordered_json j;
        j["seed"] = seed;
        nlohmann::ordered_json d;
        d["source"] = data.kind == DataSourceKind::Csv ? "csv" : "synthetic";
        d["label_kind"] = to_string(data.label_kind);
        if (data.kind == DataSourceKind::Csv) {
            d["features"] = data.features;
            d["labels"] = data.labels;
            d["splits"] = data.splits;
        } else {
            const auto& s = data.synthetic;
            d["rows"] = s.rows;
            d["base_features"] = s.base_features;
            d["planted"] = s.planted;
            d["label_rule"] = s.rule == LabelRule::ThresholdBinary ? "threshold" : "quantile";
            d["classes"] = s.classes;
            d["noise_std"] = s.noise_std;
            d["seed"] = s.seed;
        }
        j["data"] = d;
        const auto& e = evolution;
        nlohmann::ordered_json g;
        g["population_size"] = e.population_size;
        g["max_generations"] = e.max_generations;
        g["crossover_rate"] = e.crossover_rate;
        g["mutation_rate"] = e.mutation_rate;
        g["tournament_size"] = e.tournament_size;
        g["height_limit"] = e.height_limit;
        g["init_depth_min"] = e.init_depth.min;
        g["init_depth_max"] = e.init_depth.max;
        g["mutation_depth_min"] = e.mutation_depth.min;
        g["mutation_depth_max"] = e.mutation_depth.max;
        g["constant_min"] = e.constant_min;
        g["constant_max"] = e.constant_max;
        g["lambda"] = e.lambda;
        g["invalid_penalty"] = e.invalid_penalty;
        g["iterations"] = e.iterations;
        g["stagnation_generations"] = e.stagnation_generations;
        g["convergence_variance"] = e.convergence_variance_threshold;
        g["convergence_window"] = e.convergence_window;
        g["hall_of_fame_size"] = e.hall_of_fame_size;
        g["accepted_as_terminals"] = e.accepted_as_terminals;
        j["gp"] = g;
        nlohmann::ordered_json b;
        b["mode"] = to_string(gbt.mode);
        b["n_estimators"] = gbt.n_estimators;
        b["max_depth"] = gbt.max_depth;
        b["learning_rate"] = gbt.learning_rate;
        b["min_samples_leaf"] = gbt.min_samples_leaf;
        j["gbt"] = b;
        j["metric"] = std::string(to_string(metric));
        j["bootstrap"] = {{"resamples", bootstrap_resamples}, {"level", bootstrap_level}};
        j["analysis"] = {{"top_k", analysis.top_k}, {"operator_mode", to_string(analysis.operator_mode)}, {"svg", analysis.svg}};
        return j;
    }
};

} // namespace gpfeat
