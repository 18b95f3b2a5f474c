#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gpfeat/common/error.hpp"
#include "gpfeat/exprtree/operators.hpp"

namespace gpfeat {

enum class NodeKind : std::uint8_t { Operator, Feature, Constant };

struct Node {
    NodeKind kind = NodeKind::Constant;
    OpCode op = OpCode::Add;
    std::uint32_t feature = 0;
    double value = 0.0;

    static Node make_operator(OpCode code) { return {NodeKind::Operator, code, 0, 0.0}; }
    static Node make_feature(std::size_t index) { return {NodeKind::Feature, OpCode::Add, static_cast<std::uint32_t>(index), 0.0}; }
    static Node make_constant(double v) { return {NodeKind::Constant, OpCode::Add, 0, v}; }

    bool is_leaf() const noexcept { return kind != NodeKind::Operator; }
    int arity() const noexcept { return kind == NodeKind::Operator ? spec_of(op).arity : 0; }

    bool operator==(const Node&) const = default;
};

// Ordered set of terminal names. Index i is the column the FeatureLeaf with
// index i reads from.
class FeatureSet {
public:
    FeatureSet() = default;
    explicit FeatureSet(std::vector<std::string> names)
    {
        for (auto& n : names) {
            add(std::move(n));
        }
    }

    std::size_t add(std::string name)
    {
        if (name.empty()) {
            throw ConfigError("feature name must be non-empty");
        }
        auto [it, inserted] = index_.emplace(name, names_.size());
        if (!inserted) {
            throw ConfigError("duplicate feature name '" + name + "'");
        }
        names_.push_back(std::move(name));
        return it->second;
    }

    std::size_t find_or_add(const std::string& name)
    {
        if (auto idx = find(name)) {
            return *idx;
        }
        return add(name);
    }

    std::optional<std::size_t> find(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    const std::string& name(std::size_t i) const
    {
        if (i >= names_.size()) {
            throw ContractViolation("feature index " + std::to_string(i) + " out of range");
        }
        return names_[i];
    }

    const std::vector<std::string>& names() const noexcept { return names_; }
    std::size_t size() const noexcept { return names_.size(); }
    bool empty() const noexcept { return names_.empty(); }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Expression tree stored as a prefix-ordered node array. The subtree rooted at
// position i occupies [i, subtree_end(i)). Trees are values: variation builds new
// trees rather than mutating shared ones.
class ExpressionTree {
public:
    ExpressionTree() = default;

    explicit ExpressionTree(std::vector<Node> nodes)
        : nodes_(std::move(nodes))
    {
        validate();
    }

    static ExpressionTree leaf(Node n)
    {
        if (!n.is_leaf()) {
            throw ContractViolation("leaf() requires a feature or constant node");
        }
        return ExpressionTree({n});
    }

    static ExpressionTree apply(OpCode code, const std::vector<ExpressionTree>& children)
    {
        if (children.size() != static_cast<std::size_t>(spec_of(code).arity)) {
            throw ContractViolation("operator " + std::string(spec_of(code).name) + " expects " +
                                    std::to_string(spec_of(code).arity) + " children");
        }
        std::vector<Node> nodes{Node::make_operator(code)};
        for (const auto& c : children) {
            nodes.insert(nodes.end(), c.nodes_.begin(), c.nodes_.end());
        }
        return ExpressionTree(std::move(nodes));
    }

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const Node& node(std::size_t i) const { return nodes_.at(i); }
    bool empty() const noexcept { return nodes_.empty(); }

    // Number of operators plus terminals.
    std::size_t node_count() const noexcept { return nodes_.size(); }

    // Edges on the longest root-to-leaf path; a lone leaf has depth 0.
    int depth() const noexcept
    {
        std::vector<int> stack;
        stack.reserve(nodes_.size());
        for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
            int d = 0;
            for (int k = 0; k < it->arity(); ++k) {
                d = std::max(d, stack.back() + 1);
                stack.pop_back();
            }
            stack.push_back(d);
        }
        return stack.empty() ? 0 : stack.back();
    }

    std::size_t subtree_end(std::size_t i) const
    {
        if (i >= nodes_.size()) {
            throw ContractViolation("node index out of range");
        }
        std::size_t open = 1;
        std::size_t j = i;
        while (open > 0) {
            open += static_cast<std::size_t>(nodes_[j].arity());
            --open;
            ++j;
        }
        return j;
    }

    ExpressionTree subtree(std::size_t i) const
    {
        const auto end = subtree_end(i);
        ExpressionTree out;
        out.nodes_.assign(nodes_.begin() + static_cast<std::ptrdiff_t>(i), nodes_.begin() + static_cast<std::ptrdiff_t>(end));
        return out;
    }

    ExpressionTree replace_subtree(std::size_t i, const ExpressionTree& replacement) const
    {
        const auto end = subtree_end(i);
        ExpressionTree out;
        out.nodes_.reserve(nodes_.size() - (end - i) + replacement.nodes_.size());
        out.nodes_.insert(out.nodes_.end(), nodes_.begin(), nodes_.begin() + static_cast<std::ptrdiff_t>(i));
        out.nodes_.insert(out.nodes_.end(), replacement.nodes_.begin(), replacement.nodes_.end());
        out.nodes_.insert(out.nodes_.end(), nodes_.begin() + static_cast<std::ptrdiff_t>(end), nodes_.end());
        return out;
    }

    // Largest feature index referenced, if any.
    std::optional<std::size_t> max_feature_index() const noexcept
    {
        std::optional<std::size_t> best;
        for (const auto& n : nodes_) {
            if (n.kind == NodeKind::Feature) {
                best = std::max<std::size_t>(best.value_or(0), n.feature);
            }
        }
        return best;
    }

    bool operator==(const ExpressionTree&) const = default;

private:
    void validate() const
    {
        if (nodes_.empty()) {
            throw ContractViolation("expression tree must have at least one node");
        }
        // Walking prefix order, `need` is the number of subtrees still expected.
        std::size_t need = 1;
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (need == 0) {
                throw ContractViolation("trailing nodes after complete expression at index " + std::to_string(i));
            }
            need = need - 1 + static_cast<std::size_t>(nodes_[i].arity());
        }
        if (need != 0) {
            throw ContractViolation("operator arity not satisfied: " + std::to_string(need) + " subtrees missing");
        }
    }

    std::vector<Node> nodes_;
};

} // namespace gpfeat
