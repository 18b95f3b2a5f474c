#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gpfeat/classifier/gbt.hpp"
#include "gpfeat/common/error.hpp"

namespace gpfeat {

inline constexpr int kModelSchemaVersion = 1;

inline std::string to_string(BoostMode m)
{
    switch (m) {
    case BoostMode::BinaryLogistic: return "binaryLogistic";
    case BoostMode::OneVsRestMultilabel: return "oneVsRestMultilabel";
    case BoostMode::Multiclass: return "multiclass";
    }
    return "unknown";
}

inline BoostMode boost_mode_from_string(const std::string& s)
{
    if (s == "binaryLogistic") return BoostMode::BinaryLogistic;
    if (s == "oneVsRestMultilabel") return BoostMode::OneVsRestMultilabel;
    if (s == "multiclass") return BoostMode::Multiclass;
    throw ConfigError("unknown boost mode '" + s + "'");
}

namespace detail {

inline nlohmann::ordered_json tree_node_to_json(const RegressionTree& tree, int at)
{
    const auto& n = tree.nodes.at(static_cast<std::size_t>(at));
    nlohmann::ordered_json j;
    if (n.is_leaf()) {
        j["leaf"] = n.value;
        return j;
    }
    j["feature"] = n.feature;
    j["threshold"] = n.threshold;
    j["left"] = tree_node_to_json(tree, n.left);
    j["right"] = tree_node_to_json(tree, n.right);
    return j;
}

// Rebuilds the breadth-first node layout produced by training, so a round trip
// reproduces the node array exactly.
inline RegressionTree tree_from_json(const nlohmann::json& root)
{
    RegressionTree tree;
    std::vector<const nlohmann::json*> pending{&root};
    tree.nodes.emplace_back();
    for (std::size_t at = 0; at < pending.size(); ++at) {
        const auto& j = *pending[at];
        if (j.contains("leaf")) {
            tree.nodes[at].value = j.at("leaf").get<double>();
            continue;
        }
        auto& n = tree.nodes[at];
        n.feature = j.at("feature").get<int>();
        n.threshold = j.at("threshold").get<double>();
        n.left = static_cast<int>(tree.nodes.size());
        n.right = n.left + 1;
        tree.nodes.emplace_back();
        tree.nodes.emplace_back();
        pending.push_back(&j.at("left"));
        pending.push_back(&j.at("right"));
    }
    return tree;
}

} // namespace detail

inline nlohmann::ordered_json model_to_json(const GBTModel& model)
{
    nlohmann::ordered_json j;
    j["schema_version"] = kModelSchemaVersion;
    j["mode"] = to_string(model.hyper.mode);
    j["n_estimators"] = model.hyper.n_estimators;
    j["max_depth"] = model.hyper.max_depth;
    j["learning_rate"] = model.hyper.learning_rate;
    j["min_samples_leaf"] = model.hyper.min_samples_leaf;
    j["n_features"] = model.n_features;
    auto outputs = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < model.outputs(); ++k) {
        nlohmann::ordered_json o;
        o["base_score"] = model.base_score[k];
        auto trees = nlohmann::ordered_json::array();
        for (const auto& t : model.trees[k]) {
            trees.push_back(detail::tree_node_to_json(t, 0));
        }
        o["trees"] = std::move(trees);
        outputs.push_back(std::move(o));
    }
    j["outputs"] = std::move(outputs);
    return j;
}

inline GBTModel model_from_json(const nlohmann::json& j)
{
    try {
        if (j.at("schema_version").get<int>() != kModelSchemaVersion) {
            throw ConfigError("unsupported model schema_version");
        }
        GBTModel model;
        model.hyper.mode = boost_mode_from_string(j.at("mode").get<std::string>());
        model.hyper.n_estimators = j.at("n_estimators").get<int>();
        model.hyper.max_depth = j.at("max_depth").get<int>();
        model.hyper.learning_rate = j.at("learning_rate").get<double>();
        model.hyper.min_samples_leaf = j.at("min_samples_leaf").get<std::size_t>();
        model.n_features = j.at("n_features").get<std::size_t>();
        for (const auto& o : j.at("outputs")) {
            model.base_score.push_back(o.at("base_score").get<double>());
            auto& trees = model.trees.emplace_back();
            for (const auto& t : o.at("trees")) {
                trees.push_back(detail::tree_from_json(t));
            }
        }
        return model;
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(std::string("malformed model document: ") + ex.what());
    }
}

} // namespace gpfeat
