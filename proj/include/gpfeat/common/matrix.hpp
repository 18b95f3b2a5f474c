#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gpfeat/common/error.hpp"

namespace gpfeat {

// Dense column-major matrix of doubles. Columns are contiguous because every
// consumer (expression evaluation, split finding, standardization) walks one
// feature at a time.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[c * rows_ + r]; }
    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[c * rows_ + r]; }

    std::span<const double> column(std::size_t c) const
    {
        check_column(c);
        return {data_.data() + c * rows_, rows_};
    }
    std::span<double> column(std::size_t c)
    {
        check_column(c);
        return {data_.data() + c * rows_, rows_};
    }

    void append_column(std::span<const double> values)
    {
        if (cols_ > 0 && values.size() != rows_) {
            throw ContractViolation("append_column: length " + std::to_string(values.size()) + " != rows " + std::to_string(rows_));
        }
        rows_ = values.size();
        data_.insert(data_.end(), values.begin(), values.end());
        ++cols_;
    }

    Matrix select_rows(std::span<const std::size_t> rows) const
    {
        Matrix out(rows.size(), cols_);
        for (std::size_t c = 0; c < cols_; ++c) {
            auto src = column(c);
            auto dst = out.column(c);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                dst[i] = src[rows[i]];
            }
        }
        return out;
    }

    bool operator==(const Matrix&) const = default;

private:
    void check_column(std::size_t c) const
    {
        if (c >= cols_) {
            throw ContractViolation("column index " + std::to_string(c) + " out of range (" + std::to_string(cols_) + " columns)");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace gpfeat
