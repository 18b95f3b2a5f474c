#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpfeat/common/error.hpp"

namespace gpfeat {

enum class LabelKind { Multilabel, Multiclass };

// Targets for n rows. Multilabel holds an n x T binary matrix (T = 1 is plain
// binary classification); multiclass holds one class index per row.
class Labels {
public:
    Labels() = default;

    static Labels multilabel(std::vector<std::string> tags, std::vector<std::uint8_t> rowMajor)
    {
        if (tags.empty()) {
            throw ConfigError("multilabel targets need at least one tag");
        }
        if (rowMajor.size() % tags.size() != 0) {
            throw ContractViolation("binary label matrix size is not a multiple of the tag count");
        }
        for (auto v : rowMajor) {
            if (v > 1) {
                throw ContractViolation("multilabel targets must be 0 or 1");
            }
        }
        Labels l;
        l.kind_ = LabelKind::Multilabel;
        l.names_ = std::move(tags);
        l.rows_ = rowMajor.size() / l.names_.size();
        l.binary_ = std::move(rowMajor);
        return l;
    }

    static Labels multiclass(std::vector<std::string> classNames, std::vector<int> classes)
    {
        if (classNames.empty()) {
            throw ConfigError("multiclass targets need at least one class");
        }
        for (int c : classes) {
            if (c < 0 || static_cast<std::size_t>(c) >= classNames.size()) {
                throw ContractViolation("class index " + std::to_string(c) + " out of range");
            }
        }
        Labels l;
        l.kind_ = LabelKind::Multiclass;
        l.names_ = std::move(classNames);
        l.rows_ = classes.size();
        l.classes_ = std::move(classes);
        return l;
    }

    LabelKind kind() const noexcept { return kind_; }
    std::size_t rows() const noexcept { return rows_; }
    // Tags (multilabel) or classes (multiclass); one boosted model per output.
    std::size_t outputs() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::vector<int>& classes() const noexcept { return classes_; }
    const std::vector<std::uint8_t>& binary() const noexcept { return binary_; }

    // Binary target of `row` for `output` (one-vs-rest for multiclass).
    double target(std::size_t row, std::size_t output) const noexcept
    {
        if (kind_ == LabelKind::Multiclass) {
            return classes_[row] == static_cast<int>(output) ? 1.0 : 0.0;
        }
        return binary_[row * names_.size() + output];
    }

    std::vector<double> target_column(std::size_t output) const
    {
        std::vector<double> y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            y[r] = target(r, output);
        }
        return y;
    }

    Labels select_rows(std::span<const std::size_t> rows) const
    {
        Labels out;
        out.kind_ = kind_;
        out.names_ = names_;
        out.rows_ = rows.size();
        if (kind_ == LabelKind::Multiclass) {
            out.classes_.reserve(rows.size());
            for (auto r : rows) {
                out.classes_.push_back(classes_.at(r));
            }
        } else {
            const auto t = names_.size();
            out.binary_.reserve(rows.size() * t);
            for (auto r : rows) {
                if (r >= rows_) {
                    throw ContractViolation("row index out of range");
                }
                out.binary_.insert(out.binary_.end(), binary_.begin() + static_cast<std::ptrdiff_t>(r * t),
                                   binary_.begin() + static_cast<std::ptrdiff_t>((r + 1) * t));
            }
        }
        return out;
    }

    bool operator==(const Labels&) const = default;

private:
    LabelKind kind_ = LabelKind::Multilabel;
    std::vector<std::string> names_;
    std::size_t rows_ = 0;
    std::vector<std::uint8_t> binary_;
    std::vector<int> classes_;
};

} // namespace gpfeat
