#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "gpfeat/classifier/labels.hpp"
#include "gpfeat/common/error.hpp"
#include "gpfeat/common/matrix.hpp"
#include "gpfeat/exprtree/tree.hpp"

namespace gpfeat {

struct Splits {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
    std::vector<std::size_t> test;

    // Disjoint, in range; the train split must be non-empty.
    void validate(std::size_t rows) const
    {
        std::vector<char> seen(rows, 0);
        for (const auto* part : {&train, &validation, &test}) {
            for (auto r : *part) {
                if (r >= rows) {
                    throw ConfigError("split row index " + std::to_string(r) + " out of range (" + std::to_string(rows) + " rows)");
                }
                if (seen[r]) {
                    throw ConfigError("row " + std::to_string(r) + " assigned to more than one split");
                }
                seen[r] = 1;
            }
        }
        if (train.empty()) {
            throw ConfigError("train split is empty");
        }
    }
};

// Standardizes one column using statistics of `fitRows`: zero mean and unit
// (population) variance there; a column constant on those rows becomes all zeros.
struct ColumnScaler {
    double mean = 0.0;
    double stddev = 0.0; // 0 marks a zero-variance column

    static ColumnScaler fit(std::span<const double> values, std::span<const std::size_t> fitRows)
    {
        ColumnScaler s;
        if (fitRows.empty()) {
            return s;
        }
        double lo = values[fitRows.front()];
        double hi = lo;
        double sum = 0.0;
        for (auto r : fitRows) {
            lo = std::min(lo, values[r]);
            hi = std::max(hi, values[r]);
            sum += values[r];
        }
        s.mean = sum / static_cast<double>(fitRows.size());
        if (lo == hi) {
            s.mean = lo;
            return s;
        }
        double ss = 0.0;
        for (auto r : fitRows) {
            const double d = values[r] - s.mean;
            ss += d * d;
        }
        s.stddev = std::sqrt(ss / static_cast<double>(fitRows.size()));
        return s;
    }

    double apply(double v) const noexcept { return stddev > 0.0 ? (v - mean) / stddev : 0.0; }
    double invert(double z) const noexcept { return stddev > 0.0 ? z * stddev + mean : mean; }

    void apply_in_place(std::span<double> values) const noexcept
    {
        for (auto& v : values) {
            v = apply(v);
        }
    }
};

struct Standardizer {
    std::vector<ColumnScaler> columns;

    static Standardizer fit(const Matrix& x, std::span<const std::size_t> fitRows)
    {
        Standardizer s;
        s.columns.reserve(x.cols());
        for (std::size_t c = 0; c < x.cols(); ++c) {
            s.columns.push_back(ColumnScaler::fit(x.column(c), fitRows));
        }
        return s;
    }

    Matrix apply(Matrix x) const
    {
        check(x);
        for (std::size_t c = 0; c < x.cols(); ++c) {
            columns[c].apply_in_place(x.column(c));
        }
        return x;
    }

    Matrix invert(Matrix z) const
    {
        check(z);
        for (std::size_t c = 0; c < z.cols(); ++c) {
            for (auto& v : z.column(c)) {
                v = columns[c].invert(v);
            }
        }
        return z;
    }

private:
    void check(const Matrix& x) const
    {
        if (x.cols() != columns.size()) {
            throw ContractViolation("standardizer width mismatch");
        }
    }
};

// Base features, targets and fixed splits. `features` holds the standardized
// matrix (train statistics applied to every row); `raw` keeps the ingested values.
struct Dataset {
    FeatureSet names;
    Matrix raw;
    Matrix features;
    Labels labels;
    Splits splits;
    Standardizer standardizer;

    static Dataset build(FeatureSet names, Matrix raw, Labels labels, Splits splits)
    {
        if (names.size() != raw.cols()) {
            throw ConfigError("feature name count does not match column count");
        }
        if (labels.rows() != raw.rows()) {
            throw ConfigError("label rows (" + std::to_string(labels.rows()) + ") do not match feature rows (" +
                              std::to_string(raw.rows()) + ")");
        }
        for (std::size_t c = 0; c < raw.cols(); ++c) {
            for (double v : raw.column(c)) {
                if (!std::isfinite(v)) {
                    throw ConfigError("non-finite value in column " + names.name(c));
                }
            }
        }
        splits.validate(raw.rows());
        Dataset d;
        d.standardizer = Standardizer::fit(raw, splits.train);
        d.features = d.standardizer.apply(raw);
        d.names = std::move(names);
        d.raw = std::move(raw);
        d.labels = std::move(labels);
        d.splits = std::move(splits);
        return d;
    }

    std::size_t rows() const noexcept { return raw.rows(); }
    std::size_t base_features() const noexcept { return raw.cols(); }
};

} // namespace gpfeat
