#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gpfeat/classifier/labels.hpp"
#include "gpfeat/common/error.hpp"
#include "gpfeat/common/matrix.hpp"
#include "gpfeat/data/dataset.hpp"

namespace gpfeat {

namespace csv {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

inline std::vector<std::string_view> split_line(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return cells;
}

inline bool parse_double(std::string_view cell, double& out)
{
    if (cell.size() > 1 && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    const auto* end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), end, out);
    return ec == std::errc{} && ptr == end && !cell.empty();
}

inline bool parse_index(std::string_view cell, std::size_t& out)
{
    const auto* end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), end, out);
    return ec == std::errc{} && ptr == end && !cell.empty();
}

// Header plus data rows; every data row must have the header's width.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline Table read_table(std::istream& in, const std::string& source, bool hasHeader = true)
{
    Table t;
    std::string line;
    std::size_t lineNo = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (trim(line).empty()) {
            continue;
        }
        auto cells = split_line(line);
        if (lineNo == 1 && hasHeader) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].empty()) {
                    throw IngestionError(source, lineNo, c + 1, "empty header cell");
                }
                t.header.emplace_back(cells[c]);
            }
            width = cells.size();
            continue;
        }
        if (width == 0) {
            width = cells.size();
        }
        if (cells.size() != width) {
            throw IngestionError(source, lineNo, 0, "expected " + std::to_string(width) + " cells, found " + std::to_string(cells.size()));
        }
        std::vector<std::string> row;
        row.reserve(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (cells[c].empty()) {
                throw IngestionError(source, lineNo, c + 1, "missing value");
            }
            row.emplace_back(cells[c]);
        }
        t.rows.push_back(std::move(row));
    }
    if (hasHeader && t.header.empty()) {
        throw IngestionError(source, 1, 0, "missing header row");
    }
    return t;
}

inline std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IngestionError(path, 0, 0, "cannot open file");
    }
    return in;
}

} // namespace csv

inline std::pair<FeatureSet, Matrix> read_features_csv(std::istream& in, const std::string& source)
{
    const auto t = csv::read_table(in, source);
    FeatureSet names;
    for (std::size_t c = 0; c < t.header.size(); ++c) {
        try {
            names.add(t.header[c]);
        } catch (const ConfigError& ex) {
            throw IngestionError(source, 1, c + 1, ex.what());
        }
    }
    Matrix x(t.rows.size(), t.header.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            double v = 0.0;
            if (!csv::parse_double(t.rows[r][c], v)) {
                throw IngestionError(source, r + 2, c + 1, "non-numeric value '" + t.rows[r][c] + "'");
            }
            if (!std::isfinite(v)) {
                throw IngestionError(source, r + 2, c + 1, "non-finite value '" + t.rows[r][c] + "'");
            }
            x(r, c) = v;
        }
    }
    return {std::move(names), std::move(x)};
}

// Multilabel: one 0/1 column per tag. Multiclass: exactly one column of class
// tokens; classes are ordered numerically when every token is an integer,
// lexicographically otherwise.
inline Labels read_labels_csv(std::istream& in, const std::string& source, LabelKind kind)
{
    const auto t = csv::read_table(in, source);
    if (kind == LabelKind::Multilabel) {
        std::vector<std::uint8_t> bits;
        bits.reserve(t.rows.size() * t.header.size());
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            for (std::size_t c = 0; c < t.header.size(); ++c) {
                const auto& cell = t.rows[r][c];
                if (cell != "0" && cell != "1") {
                    throw IngestionError(source, r + 2, c + 1, "multilabel target must be 0 or 1, got '" + cell + "'");
                }
                bits.push_back(cell == "1" ? 1 : 0);
            }
        }
        return Labels::multilabel(t.header, std::move(bits));
    }

    if (t.header.size() != 1) {
        throw IngestionError(source, 1, 0, "multiclass labels need exactly one column");
    }
    std::vector<std::string> tokens;
    for (const auto& row : t.rows) {
        tokens.push_back(row[0]);
    }
    std::vector<std::string> classes = tokens;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    const bool numeric = std::all_of(classes.begin(), classes.end(), [](const std::string& s) {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc{} && ptr == s.data() + s.size();
    });
    if (numeric) {
        std::sort(classes.begin(), classes.end(), [](const std::string& a, const std::string& b) { return std::stoll(a) < std::stoll(b); });
    }
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        index[classes[i]] = static_cast<int>(i);
    }
    std::vector<int> ids;
    ids.reserve(tokens.size());
    for (const auto& tok : tokens) {
        ids.push_back(index.at(tok));
    }
    return Labels::multiclass(std::move(classes), std::move(ids));
}

// Two columns (rowIndex, split) with split in {train, val, test}; an optional
// header row is recognised by a non-integer first cell. Every row must be
// assigned exactly once.
inline Splits read_splits_csv(std::istream& in, const std::string& source, std::size_t rows)
{
    const auto t = csv::read_table(in, source, false);
    Splits s;
    std::vector<char> seen(rows, 0);
    std::size_t firstData = 0;
    std::size_t probe = 0;
    if (!t.rows.empty() && !csv::parse_index(t.rows[0][0], probe)) {
        firstData = 1;
    }
    for (std::size_t i = firstData; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        const auto lineNo = i + 1;
        if (row.size() != 2) {
            throw IngestionError(source, lineNo, 0, "expected two cells (rowIndex, split)");
        }
        std::size_t r = 0;
        if (!csv::parse_index(row[0], r)) {
            throw IngestionError(source, lineNo, 1, "invalid row index '" + row[0] + "'");
        }
        if (r >= rows) {
            throw IngestionError(source, lineNo, 1, "row index " + row[0] + " out of range");
        }
        if (seen[r]) {
            throw IngestionError(source, lineNo, 1, "row " + row[0] + " assigned twice");
        }
        seen[r] = 1;
        if (row[1] == "train") {
            s.train.push_back(r);
        } else if (row[1] == "val" || row[1] == "validation") {
            s.validation.push_back(r);
        } else if (row[1] == "test") {
            s.test.push_back(r);
        } else {
            throw IngestionError(source, lineNo, 2, "unknown split '" + row[1] + "'");
        }
    }
    for (std::size_t r = 0; r < rows; ++r) {
        if (!seen[r]) {
            throw IngestionError(source, 0, 0, "row " + std::to_string(r) + " has no split assignment");
        }
    }
    for (auto* part : {&s.train, &s.validation, &s.test}) {
        std::sort(part->begin(), part->end());
    }
    return s;
}

inline Dataset load_csv(const std::string& featuresPath, const std::string& labelsPath, const std::string& splitPath, LabelKind kind)
{
    auto fin = csv::open_input(featuresPath);
    auto [names, raw] = read_features_csv(fin, featuresPath);
    auto lin = csv::open_input(labelsPath);
    auto labels = read_labels_csv(lin, labelsPath, kind);
    if (labels.rows() != raw.rows()) {
        throw IngestionError(labelsPath, 0, 0,
                             "has " + std::to_string(labels.rows()) + " rows but features have " + std::to_string(raw.rows()));
    }
    auto sin = csv::open_input(splitPath);
    auto splits = read_splits_csv(sin, splitPath, raw.rows());
    return Dataset::build(std::move(names), std::move(raw), std::move(labels), std::move(splits));
}

inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_features_csv(std::ostream& out, const FeatureSet& names, const Matrix& x)
{
    for (std::size_t c = 0; c < names.size(); ++c) {
        out << (c ? "," : "") << names.name(c);
    }
    out << '\n';
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            out << (c ? "," : "") << format_double(x(r, c));
        }
        out << '\n';
    }
}

inline void write_labels_csv(std::ostream& out, const Labels& labels)
{
    if (labels.kind() == LabelKind::Multiclass) {
        out << "class\n";
        for (int c : labels.classes()) {
            out << labels.names()[static_cast<std::size_t>(c)] << '\n';
        }
        return;
    }
    for (std::size_t k = 0; k < labels.outputs(); ++k) {
        out << (k ? "," : "") << labels.names()[k];
    }
    out << '\n';
    for (std::size_t r = 0; r < labels.rows(); ++r) {
        for (std::size_t k = 0; k < labels.outputs(); ++k) {
            out << (k ? "," : "") << static_cast<int>(labels.target(r, k));
        }
        out << '\n';
    }
}

inline void write_splits_csv(std::ostream& out, const Splits& splits, std::size_t rows)
{
    std::vector<const char*> tag(rows, nullptr);
    for (auto r : splits.train) tag[r] = "train";
    for (auto r : splits.validation) tag[r] = "val";
    for (auto r : splits.test) tag[r] = "test";
    out << "row,split\n";
    for (std::size_t r = 0; r < rows; ++r) {
        if (tag[r]) {
            out << r << ',' << tag[r] << '\n';
        }
    }
}

} // namespace gpfeat
