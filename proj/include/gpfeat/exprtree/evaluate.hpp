#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "gpfeat/common/error.hpp"
#include "gpfeat/common/matrix.hpp"
#include "gpfeat/exprtree/operators.hpp"
#include "gpfeat/exprtree/tree.hpp"

namespace gpfeat {

inline constexpr double kSanitizeBound = 1e12;

// nan_to_num with a bounded infinity: NaN -> 0, +inf -> 1e12, -inf -> -1e12.
inline double sanitize_value(double v) noexcept
{
    if (std::isnan(v)) {
        return 0.0;
    }
    if (std::isinf(v)) {
        return v > 0 ? kSanitizeBound : -kSanitizeBound;
    }
    return v;
}

inline void sanitize_in_place(std::span<double> values) noexcept
{
    for (auto& v : values) {
        v = sanitize_value(v);
    }
}

inline std::vector<double> sanitize(std::vector<double> values)
{
    sanitize_in_place(values);
    return values;
}

struct EvalResult {
    std::vector<double> values; // sanitized, always finite
    bool had_non_finite = false; // some raw output entry was NaN or infinite
};

namespace detail {

template <typename F>
void unary_into(std::span<double> a, F&& f)
{
    for (auto& x : a) {
        x = f(x);
    }
}

template <typename F>
void binary_into(std::span<double> a, std::span<const double> b, F&& f)
{
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = f(a[i], b[i]);
    }
}

inline void apply_columnwise(OpCode op, std::span<double> a, std::span<const double> b, std::span<const double> c)
{
    switch (op) {
    case OpCode::Add: binary_into(a, b, [](double x, double y) { return x + y; }); break;
    case OpCode::Sub: binary_into(a, b, [](double x, double y) { return x - y; }); break;
    case OpCode::Mul: binary_into(a, b, [](double x, double y) { return x * y; }); break;
    case OpCode::Div: binary_into(a, b, protect::div); break;
    case OpCode::Pow: binary_into(a, b, protect::pow); break;
    case OpCode::Min: binary_into(a, b, [](double x, double y) { return std::min(x, y); }); break;
    case OpCode::Max: binary_into(a, b, [](double x, double y) { return std::max(x, y); }); break;
    case OpCode::IfThen:
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = a[i] > 0.0 ? b[i] : c[i];
        }
        break;
    default: unary_into(a, [op](double x) { return apply_operator(op, x); }); break;
    }
}

} // namespace detail

// Evaluates the tree on every row of `features` (rows x base columns). The raw
// output is checked for non-finite entries and then sanitized.
inline EvalResult evaluate(const ExpressionTree& tree, const Matrix& features)
{
    if (tree.empty()) {
        throw ContractViolation("cannot evaluate an empty tree");
    }
    if (auto maxIdx = tree.max_feature_index(); maxIdx && *maxIdx >= features.cols()) {
        throw ContractViolation("feature index " + std::to_string(*maxIdx) + " out of range for " +
                                std::to_string(features.cols()) + " columns");
    }

    const std::size_t rows = features.rows();
    const auto& nodes = tree.nodes();

    // Reverse prefix order is a valid postfix schedule. Buffers are recycled
    // through a free list so a tree of any size needs at most depth+1 live columns.
    std::vector<std::vector<double>> stack;
    std::vector<std::vector<double>> spare;
    auto take = [&]() {
        if (spare.empty()) {
            return std::vector<double>(rows);
        }
        auto v = std::move(spare.back());
        spare.pop_back();
        return v;
    };

    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) {
        const Node& n = *it;
        switch (n.kind) {
        case NodeKind::Feature: {
            auto buf = take();
            auto col = features.column(n.feature);
            std::copy(col.begin(), col.end(), buf.begin());
            stack.push_back(std::move(buf));
            break;
        }
        case NodeKind::Constant: {
            auto buf = take();
            std::fill(buf.begin(), buf.end(), n.value);
            stack.push_back(std::move(buf));
            break;
        }
        case NodeKind::Operator: {
            const int arity = n.arity();
            // Operand k of the operator sits at stack[top - k].
            auto first = std::move(stack.back());
            stack.pop_back();
            std::span<const double> second;
            std::span<const double> third;
            std::vector<double> secondBuf;
            std::vector<double> thirdBuf;
            if (arity >= 2) {
                secondBuf = std::move(stack.back());
                stack.pop_back();
                second = secondBuf;
            }
            if (arity == 3) {
                thirdBuf = std::move(stack.back());
                stack.pop_back();
                third = thirdBuf;
            }
            detail::apply_columnwise(n.op, first, second, third);
            if (!secondBuf.empty()) {
                spare.push_back(std::move(secondBuf));
            }
            if (!thirdBuf.empty()) {
                spare.push_back(std::move(thirdBuf));
            }
            stack.push_back(std::move(first));
            break;
        }
        }
    }

    EvalResult result;
    result.values = std::move(stack.back());
    for (double v : result.values) {
        if (!std::isfinite(v)) {
            result.had_non_finite = true;
            break;
        }
    }
    sanitize_in_place(result.values);
    return result;
}

} // namespace gpfeat
