#pragma once

// Independent reference implementations used as test oracles. They follow the
// written operator and metric definitions directly and share no code paths
// with the library beyond the tree data structure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gpfeat/gpfeat.hpp"

namespace oracle {

inline double op_value(const std::string& name, double a, double b, double c)
{
    const auto clampBig = [](double v) { return std::min(1e12, std::max(-1e12, v)); };
    const auto clampArg = [](double v) { return std::min(50.0, std::max(-50.0, v)); };
    const auto sig = [&](double v) { return 1.0 / (1.0 + std::exp(-clampArg(v))); };
    if (name == "add") return a + b;
    if (name == "sub") return a - b;
    if (name == "mul") return a * b;
    if (name == "div") return std::abs(b) > 1e-9 ? a / b : 1.0;
    if (name == "inv") return std::abs(a) > 1e-9 ? 1.0 / a : 1.0;
    if (name == "neg") return -a;
    if (name == "abs") return std::abs(a);
    if (name == "log") return std::abs(a) > 1e-9 ? std::log(std::abs(a)) : 0.0;
    if (name == "sqrt") return std::sqrt(std::abs(a));
    if (name == "pow") {
        if (a == 0.0) return 0.0;
        const double s = a < 0 ? -1.0 : 1.0;
        return clampBig(s * std::pow(std::abs(a), b));
    }
    if (name == "sin") return std::sin(a);
    if (name == "cos") return std::cos(a);
    if (name == "tan") return clampBig(std::tan(a));
    if (name == "sinh") return std::sinh(clampArg(a));
    if (name == "cosh") return std::cosh(clampArg(a));
    if (name == "tanh") return std::tanh(a);
    if (name == "min") return a < b ? a : b;
    if (name == "max") return a > b ? a : b;
    if (name == "sigmoid") return sig(a);
    if (name == "relu") return a > 0 ? a : 0.0;
    if (name == "lrelu") return a > 0 ? a : 0.01 * a;
    if (name == "swish") return a * sig(a);
    if (name == "if_then") return a > 0 ? b : c;
    throw std::runtime_error("oracle: unknown operator " + name);
}

// Recursive per-row interpreter; returns the value of the subtree at `at` and
// advances `at` past it.
inline double interpret(const gpfeat::ExpressionTree& tree, std::size_t& at, const gpfeat::Matrix& x, std::size_t row)
{
    const auto& n = tree.node(at++);
    if (n.kind == gpfeat::NodeKind::Feature) return x(row, n.feature);
    if (n.kind == gpfeat::NodeKind::Constant) return n.value;
    const auto& spec = gpfeat::spec_of(n.op);
    double args[3] = {0.0, 0.0, 0.0};
    for (int k = 0; k < spec.arity; ++k) {
        args[k] = interpret(tree, at, x, row);
    }
    return op_value(std::string(spec.name), args[0], args[1], args[2]);
}

inline double sanitize(double v)
{
    if (std::isnan(v)) return 0.0;
    if (std::isinf(v)) return v > 0 ? 1e12 : -1e12;
    return v;
}

inline std::vector<double> evaluate(const gpfeat::ExpressionTree& tree, const gpfeat::Matrix& x)
{
    std::vector<double> out(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        std::size_t at = 0;
        out[r] = sanitize(interpret(tree, at, x, r));
    }
    return out;
}

// AUC as the fraction of (positive, negative) pairs ranked correctly, ties half.
inline double brute_auc(const std::vector<double>& scores, const std::vector<int>& labels)
{
    double good = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            pairs += 1.0;
            if (scores[i] > scores[j]) good += 1.0;
            else if (scores[i] == scores[j]) good += 0.5;
        }
    }
    return good / pairs;
}

inline std::set<std::size_t> leaf_features(const gpfeat::ExpressionTree& t)
{
    std::set<std::size_t> out;
    for (const auto& n : t.nodes()) {
        if (n.kind == gpfeat::NodeKind::Feature) out.insert(n.feature);
    }
    return out;
}

inline std::set<std::size_t> operators_used(const gpfeat::ExpressionTree& t)
{
    std::set<std::size_t> out;
    for (const auto& n : t.nodes()) {
        if (n.kind == gpfeat::NodeKind::Operator) out.insert(static_cast<std::size_t>(n.op));
    }
    return out;
}

struct Recount {
    std::vector<std::vector<std::size_t>> count;
    std::vector<std::vector<double>> sum;
};

// O(E * rows * cols) recount: for every cell, scan every expression.
inline Recount pair_recount(const std::vector<gpfeat::ExpressionTree>& trees, const std::vector<double>& perf, std::size_t d)
{
    Recount r{std::vector<std::vector<std::size_t>>(d, std::vector<std::size_t>(d, 0)),
              std::vector<std::vector<double>>(d, std::vector<double>(d, 0.0))};
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j) continue;
            for (std::size_t e = 0; e < trees.size(); ++e) {
                const auto f = leaf_features(trees[e]);
                if (f.count(i) && f.count(j)) {
                    ++r.count[i][j];
                    r.sum[i][j] += perf[e];
                }
            }
        }
    }
    return r;
}

inline Recount operator_recount(const std::vector<gpfeat::ExpressionTree>& trees, const std::vector<double>& perf, std::size_t d)
{
    const std::size_t ops = gpfeat::kOperators.size();
    Recount r{std::vector<std::vector<std::size_t>>(ops, std::vector<std::size_t>(d, 0)),
              std::vector<std::vector<double>>(ops, std::vector<double>(d, 0.0))};
    for (std::size_t o = 0; o < ops; ++o) {
        for (std::size_t f = 0; f < d; ++f) {
            for (std::size_t e = 0; e < trees.size(); ++e) {
                if (operators_used(trees[e]).count(o) && leaf_features(trees[e]).count(f)) {
                    ++r.count[o][f];
                    r.sum[o][f] += perf[e];
                }
            }
        }
    }
    return r;
}

inline std::vector<double> prefix_max(const std::vector<double>& v)
{
    std::vector<double> out;
    for (std::size_t t = 0; t < v.size(); ++t) {
        out.push_back(*std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(t + 1)));
    }
    return out;
}

inline std::vector<double> prefix_mean(const std::vector<double>& v)
{
    std::vector<double> out;
    for (std::size_t t = 0; t < v.size(); ++t) {
        long double s = 0;
        for (std::size_t k = 0; k <= t; ++k) s += v[k];
        out.push_back(static_cast<double>(s / static_cast<long double>(t + 1)));
    }
    return out;
}

// Random tree with depth in [0, maxDepth] over `features` columns, mixing full
// and grow shapes.
inline gpfeat::ExpressionTree random_tree(std::mt19937_64& rng, std::size_t features, int maxDepth)
{
    const gpfeat::TreeGenerator gen(features, -2.0, 2.0);
    std::uniform_int_distribution<int> depth(0, maxDepth);
    const int d = depth(rng);
    return (rng() & 1U) ? gen.full(d, rng) : gen.grow(d, 0, rng);
}

inline gpfeat::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double scale = 1.0)
{
    gpfeat::Matrix x(rows, cols);
    std::normal_distribution<double> n(0.0, scale);
    for (std::size_t c = 0; c < cols; ++c) {
        for (auto& v : x.column(c)) v = n(rng);
    }
    return x;
}

} // namespace oracle
