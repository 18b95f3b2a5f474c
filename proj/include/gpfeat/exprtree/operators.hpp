#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gpfeat/common/error.hpp"

namespace gpfeat {

enum class OpCode : std::uint8_t {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
    Abs,
    Log,
    Sqrt,
    Pow,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Min,
    Max,
    Sigmoid,
    Relu,
    LRelu,
    Swish,
    IfThen,
};

enum class OpKind : std::uint8_t { Arithmetic, Protected, Trig, Hyperbolic, MinMax, Activation, Conditional };

struct OperatorSpec {
    OpCode code;
    std::string_view name;
    int arity;
    OpKind kind;
};

inline constexpr std::array<OperatorSpec, 23> kOperators{{
    {OpCode::Add, "add", 2, OpKind::Arithmetic},
    {OpCode::Sub, "sub", 2, OpKind::Arithmetic},
    {OpCode::Mul, "mul", 2, OpKind::Arithmetic},
    {OpCode::Div, "div", 2, OpKind::Protected},
    {OpCode::Inv, "inv", 1, OpKind::Protected},
    {OpCode::Neg, "neg", 1, OpKind::Arithmetic},
    {OpCode::Abs, "abs", 1, OpKind::Arithmetic},
    {OpCode::Log, "log", 1, OpKind::Protected},
    {OpCode::Sqrt, "sqrt", 1, OpKind::Protected},
    {OpCode::Pow, "pow", 2, OpKind::Protected},
    {OpCode::Sin, "sin", 1, OpKind::Trig},
    {OpCode::Cos, "cos", 1, OpKind::Trig},
    {OpCode::Tan, "tan", 1, OpKind::Trig},
    {OpCode::Sinh, "sinh", 1, OpKind::Hyperbolic},
    {OpCode::Cosh, "cosh", 1, OpKind::Hyperbolic},
    {OpCode::Tanh, "tanh", 1, OpKind::Hyperbolic},
    {OpCode::Min, "min", 2, OpKind::MinMax},
    {OpCode::Max, "max", 2, OpKind::MinMax},
    {OpCode::Sigmoid, "sigmoid", 1, OpKind::Activation},
    {OpCode::Relu, "relu", 1, OpKind::Activation},
    {OpCode::LRelu, "lrelu", 1, OpKind::Activation},
    {OpCode::Swish, "swish", 1, OpKind::Activation},
    {OpCode::IfThen, "if_then", 3, OpKind::Conditional},
}};

inline constexpr const OperatorSpec& spec_of(OpCode code) noexcept
{
    return kOperators[static_cast<std::size_t>(code)];
}

inline std::optional<OpCode> find_operator(std::string_view name) noexcept
{
    for (const auto& op : kOperators) {
        if (op.name == name) {
            return op.code;
        }
    }
    return std::nullopt;
}

namespace protect {

inline constexpr double kEpsilon = 1e-9;
inline constexpr double kBound = 1e12;
inline constexpr double kExpArgBound = 50.0;
inline constexpr double kLeakySlope = 0.01;

inline double clamp_bound(double v) noexcept { return std::clamp(v, -kBound, kBound); }
inline double clamp_exp_arg(double v) noexcept { return std::clamp(v, -kExpArgBound, kExpArgBound); }

inline double div(double a, double b) noexcept { return std::fabs(b) > kEpsilon ? a / b : 1.0; }
inline double inv(double a) noexcept { return std::fabs(a) > kEpsilon ? 1.0 / a : 1.0; }
inline double log(double a) noexcept { return std::fabs(a) > kEpsilon ? std::log(std::fabs(a)) : 0.0; }
inline double sqrt(double a) noexcept { return std::sqrt(std::fabs(a)); }

// sign(a) * |a|^b; zero base yields zero for every exponent, which covers 0^negative.
inline double pow(double a, double b) noexcept
{
    if (a == 0.0) {
        return 0.0;
    }
    const double magnitude = std::pow(std::fabs(a), b);
    return clamp_bound(a < 0.0 ? -magnitude : magnitude);
}

inline double sigmoid(double a) noexcept { return 1.0 / (1.0 + std::exp(-clamp_exp_arg(a))); }

} // namespace protect

// Scalar semantics of every registered operator. Total on finite arguments; the
// only non-finite outputs possible come from add/sub/mul overflowing beyond
// double range, which evaluation reports through its non-finite flag.
inline double apply_operator(OpCode code, double a, double b = 0.0, double c = 0.0) noexcept
{
    switch (code) {
    case OpCode::Add: return a + b;
    case OpCode::Sub: return a - b;
    case OpCode::Mul: return a * b;
    case OpCode::Div: return protect::div(a, b);
    case OpCode::Inv: return protect::inv(a);
    case OpCode::Neg: return -a;
    case OpCode::Abs: return std::fabs(a);
    case OpCode::Log: return protect::log(a);
    case OpCode::Sqrt: return protect::sqrt(a);
    case OpCode::Pow: return protect::pow(a, b);
    case OpCode::Sin: return std::sin(a);
    case OpCode::Cos: return std::cos(a);
    case OpCode::Tan: return protect::clamp_bound(std::tan(a));
    case OpCode::Sinh: return std::sinh(protect::clamp_exp_arg(a));
    case OpCode::Cosh: return std::cosh(protect::clamp_exp_arg(a));
    case OpCode::Tanh: return std::tanh(a);
    case OpCode::Min: return std::min(a, b);
    case OpCode::Max: return std::max(a, b);
    case OpCode::Sigmoid: return protect::sigmoid(a);
    case OpCode::Relu: return a > 0.0 ? a : 0.0;
    case OpCode::LRelu: return a > 0.0 ? a : protect::kLeakySlope * a;
    case OpCode::Swish: return a * protect::sigmoid(a);
    case OpCode::IfThen: return a > 0.0 ? b : c;
    }
    return 0.0;
}

inline double apply_operator(const OperatorSpec& op, std::span<const double> args)
{
    if (args.size() != static_cast<std::size_t>(op.arity)) {
        throw ContractViolation("operator " + std::string(op.name) + " expects " + std::to_string(op.arity) + " arguments, got " +
                                std::to_string(args.size()));
    }
    switch (op.arity) {
    case 1: return apply_operator(op.code, args[0]);
    case 2: return apply_operator(op.code, args[0], args[1]);
    default: return apply_operator(op.code, args[0], args[1], args[2]);
    }
}

} // namespace gpfeat
