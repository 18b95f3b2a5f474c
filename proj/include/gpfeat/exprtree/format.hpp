#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "gpfeat/common/error.hpp"
#include "gpfeat/exprtree/operators.hpp"
#include "gpfeat/exprtree/tree.hpp"

namespace gpfeat {

// Constants print with 6 significant digits.
inline std::string format_constant(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Rounds a constant to the value its canonical text parses back to, so that a
// tree holding it survives serialize/parse unchanged.
inline double quantize_constant(double v)
{
    const auto text = format_constant(v);
    double out = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), out);
    return out;
}

namespace detail {

inline void serialize_into(const ExpressionTree& tree, std::size_t i, const FeatureSet& features, std::string& out)
{
    const Node& n = tree.node(i);
    switch (n.kind) {
    case NodeKind::Feature: out += features.name(n.feature); return;
    case NodeKind::Constant: out += format_constant(n.value); return;
    case NodeKind::Operator: break;
    }
    out += '(';
    out += spec_of(n.op).name;
    std::size_t child = i + 1;
    for (int k = 0; k < n.arity(); ++k) {
        out += ' ';
        serialize_into(tree, child, features, out);
        child = tree.subtree_end(child);
    }
    out += ')';
}

} // namespace detail

// Canonical parenthesized prefix form, e.g. "(sub Loudness (pow BPM dom_dom))".
inline std::string serialize(const ExpressionTree& tree, const FeatureSet& features)
{
    std::string out;
    detail::serialize_into(tree, 0, features, out);
    return out;
}

namespace detail {

class PrefixParser {
public:
    PrefixParser(std::string_view text, const FeatureSet& features, FeatureSet* grow)
        : text_(text), features_(features), grow_(grow) {}

    ExpressionTree run()
    {
        parse_expr();
        skip_space();
        if (pos_ != text_.size()) {
            throw ParseError("unexpected trailing input", pos_);
        }
        return ExpressionTree(std::move(nodes_));
    }

private:
    static bool is_delim(char c) { return c == '(' || c == ')' || std::isspace(static_cast<unsigned char>(c)); }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    std::string_view atom()
    {
        const auto start = pos_;
        while (pos_ < text_.size() && !is_delim(text_[pos_])) {
            ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    void parse_expr()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            throw ParseError("unexpected end of input", pos_);
        }
        if (text_[pos_] == ')') {
            throw ParseError("unexpected ')'", pos_);
        }
        if (text_[pos_] == '(') {
            ++pos_;
            skip_space();
            const auto opPos = pos_;
            const auto name = atom();
            if (name.empty()) {
                throw ParseError("expected operator name", opPos);
            }
            const auto code = find_operator(name);
            if (!code) {
                throw ParseError("unknown operator '" + std::string(name) + "'", opPos);
            }
            nodes_.push_back(Node::make_operator(*code));
            for (int k = 0; k < spec_of(*code).arity; ++k) {
                skip_space();
                if (pos_ < text_.size() && text_[pos_] == ')') {
                    throw ParseError("operator '" + std::string(name) + "' expects " + std::to_string(spec_of(*code).arity) +
                                         " arguments",
                                     pos_);
                }
                parse_expr();
            }
            skip_space();
            if (pos_ >= text_.size() || text_[pos_] != ')') {
                throw ParseError("expected ')' closing '" + std::string(name) + "'", pos_);
            }
            ++pos_;
            return;
        }

        const auto atomPos = pos_;
        const auto token = atom();
        double value = 0.0;
        const auto* begin = token.data();
        const auto* end = token.data() + token.size();
        // from_chars rejects an explicit plus sign.
        if (token.size() > 1 && token[0] == '+' && token[1] != '-') {
            ++begin;
        }
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec == std::errc{} && ptr == end) {
            if (!std::isfinite(value)) {
                throw ParseError("non-finite constant '" + std::string(token) + "'", atomPos);
            }
            nodes_.push_back(Node::make_constant(value));
            return;
        }
        const std::string name(token);
        if (auto idx = features_.find(name)) {
            nodes_.push_back(Node::make_feature(*idx));
        } else if (grow_ != nullptr) {
            nodes_.push_back(Node::make_feature(grow_->add(name)));
        } else {
            throw ParseError("unknown feature '" + name + "'", atomPos);
        }
    }

    std::string_view text_;
    const FeatureSet& features_;
    FeatureSet* grow_;
    std::size_t pos_ = 0;
    std::vector<Node> nodes_;
};

} // namespace detail

// Parses canonical prefix text against a fixed feature set; unknown names are errors.
inline ExpressionTree parse(std::string_view text, const FeatureSet& features)
{
    return detail::PrefixParser(text, features, nullptr).run();
}

// Parses prefix text, registering previously unseen feature names in `features`.
// Used when reading logs without the originating dataset.
inline ExpressionTree parse_open(std::string_view text, FeatureSet& features)
{
    return detail::PrefixParser(text, features, &features).run();
}

namespace detail {

inline bool is_infix(const Node& n)
{
    return n.kind == NodeKind::Operator &&
           (n.op == OpCode::Add || n.op == OpCode::Sub || n.op == OpCode::Mul || n.op == OpCode::Div);
}

inline std::string infix_at(const ExpressionTree& tree, std::size_t i, const FeatureSet& features)
{
    const Node& n = tree.node(i);
    if (n.kind == NodeKind::Feature) {
        return features.name(n.feature);
    }
    if (n.kind == NodeKind::Constant) {
        return format_constant(n.value);
    }

    std::vector<std::string> args;
    std::size_t child = i + 1;
    for (int k = 0; k < n.arity(); ++k) {
        auto s = infix_at(tree, child, features);
        if (is_infix(n) && is_infix(tree.node(child))) {
            s = "(" + s + ")";
        }
        args.push_back(std::move(s));
        child = tree.subtree_end(child);
    }

    switch (n.op) {
    case OpCode::Add: return args[0] + " + " + args[1];
    case OpCode::Sub: return args[0] + " - " + args[1];
    case OpCode::Mul: return args[0] + " * " + args[1];
    case OpCode::Div: return args[0] + " / " + args[1];
    case OpCode::IfThen: return "if(" + args[0] + " > 0, " + args[1] + ", " + args[2] + ")";
    default: break;
    }
    std::string out(spec_of(n.op).name);
    out += '(';
    for (std::size_t k = 0; k < args.size(); ++k) {
        out += (k ? ", " : "") + args[k];
    }
    out += ')';
    return out;
}

} // namespace detail

// Human-readable infix rendering for reports, e.g. "Loudness - pow(BPM, dom_dom)".
// Not parseable; the prefix form is the interchange format.
inline std::string to_infix(const ExpressionTree& tree, const FeatureSet& features)
{
    return detail::infix_at(tree, 0, features);
}

} // namespace gpfeat
