#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gpfeat/common/error.hpp"
#include "gpfeat/common/rng.hpp"
#include "gpfeat/data/dataset.hpp"
#include "gpfeat/exprtree/evaluate.hpp"
#include "gpfeat/exprtree/format.hpp"

namespace gpfeat {

enum class LabelRule { ThresholdBinary, QuantileMulticlass };

struct SyntheticSpec {
    std::size_t rows = 2000;
    std::size_t base_features = 10;
    std::string planted = "(mul x0 x1)"; // prefix form over x0..x{d-1}
    LabelRule rule = LabelRule::ThresholdBinary;
    int classes = 2; // bins for QuantileMulticlass
    double noise_std = 0.1;
    std::uint64_t seed = 0;
};

inline FeatureSet synthetic_feature_names(std::size_t count)
{
    FeatureSet names;
    for (std::size_t i = 0; i < count; ++i) {
        names.add("x" + std::to_string(i));
    }
    return names;
}

// Standard-normal base features; latent = planted(x) + N(0, noise^2). Binary
// labels threshold the latent at its median, multiclass labels cut it into
// equal-count quantile bins. Rows are split 60/20/20 after a seeded shuffle.
inline Dataset generate_synthetic(const SyntheticSpec& spec)
{
    if (spec.rows < 5) {
        throw ConfigError("synthetic dataset needs at least 5 rows");
    }
    if (spec.base_features < 1) {
        throw ConfigError("synthetic dataset needs at least one base feature");
    }
    if (spec.noise_std < 0.0) {
        throw ConfigError("noise_std must be >= 0");
    }
    if (spec.rule == LabelRule::QuantileMulticlass && spec.classes < 2) {
        throw ConfigError("quantile labels need at least 2 classes");
    }

    auto names = synthetic_feature_names(spec.base_features);
    ExpressionTree planted;
    try {
        planted = parse(spec.planted, names);
    } catch (const ParseError& ex) {
        throw ConfigError(std::string("planted expression: ") + ex.what());
    }

    const std::size_t n = spec.rows;
    Matrix x(n, spec.base_features);
    {
        auto rng = make_stream(spec.seed, "synthetic-features");
        std::normal_distribution<double> normal(0.0, 1.0);
        for (std::size_t c = 0; c < x.cols(); ++c) {
            for (auto& v : x.column(c)) {
                v = normal(rng);
            }
        }
    }

    auto latent = evaluate(planted, x).values;
    if (spec.noise_std > 0.0) {
        auto rng = make_stream(spec.seed, "synthetic-noise");
        std::normal_distribution<double> noise(0.0, spec.noise_std);
        for (auto& v : latent) {
            v += noise(rng);
        }
    }

    std::vector<std::size_t> byLatent(n);
    std::iota(byLatent.begin(), byLatent.end(), 0);
    std::stable_sort(byLatent.begin(), byLatent.end(), [&](std::size_t a, std::size_t b) { return latent[a] < latent[b]; });

    Labels labels;
    if (spec.rule == LabelRule::ThresholdBinary) {
        std::vector<double> sorted(n);
        for (std::size_t i = 0; i < n; ++i) {
            sorted[i] = latent[byLatent[i]];
        }
        const double median = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
        std::vector<std::uint8_t> bits(n);
        for (std::size_t i = 0; i < n; ++i) {
            bits[i] = latent[i] > median ? 1 : 0;
        }
        labels = Labels::multilabel({"y"}, std::move(bits));
    } else {
        const auto k = static_cast<std::size_t>(spec.classes);
        std::vector<int> cls(n);
        for (std::size_t rank = 0; rank < n; ++rank) {
            cls[byLatent[rank]] = static_cast<int>(rank * k / n);
        }
        std::vector<std::string> classNames;
        for (std::size_t c = 0; c < k; ++c) {
            classNames.push_back(std::to_string(c));
        }
        labels = Labels::multiclass(std::move(classNames), std::move(cls));
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto splitRng = make_stream(spec.seed, "synthetic-split");
    std::shuffle(order.begin(), order.end(), splitRng);
    const std::size_t nTrain = n * 6 / 10;
    const std::size_t nVal = n * 2 / 10;
    Splits splits;
    splits.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(nTrain));
    splits.validation.assign(order.begin() + static_cast<std::ptrdiff_t>(nTrain), order.begin() + static_cast<std::ptrdiff_t>(nTrain + nVal));
    splits.test.assign(order.begin() + static_cast<std::ptrdiff_t>(nTrain + nVal), order.end());
    for (auto* part : {&splits.train, &splits.validation, &splits.test}) {
        std::sort(part->begin(), part->end());
    }

    return Dataset::build(std::move(names), std::move(x), std::move(labels), std::move(splits));
}

} // namespace gpfeat
