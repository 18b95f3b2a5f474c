#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpfeat {

// Precondition of a public operation was broken by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Invalid configuration or command input; maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position))
        , position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Malformed tabular input. Row and column are 1-based as they appear in the file
// (header is row 1); zero means "not applicable".
class IngestionError : public std::runtime_error {
public:
    IngestionError(const std::string& file, std::size_t row, std::size_t column, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(row) + (column ? ":" + std::to_string(column) : std::string{}) + ": " + what)
        , row_(row)
        , column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fitness evaluation failed for a specific candidate.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& expression, const std::string& what)
        : std::runtime_error("evaluation of " + expression + " failed: " + what)
        , expression_(expression) {}

    const std::string& expression() const noexcept { return expression_; }

private:
    std::string expression_;
};

class EvolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gpfeat
