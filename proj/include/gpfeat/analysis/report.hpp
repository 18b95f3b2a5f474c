#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpfeat/analysis/cooccurrence.hpp"
#include "gpfeat/analysis/trajectory.hpp"
#include "gpfeat/engine/hall_of_fame.hpp"
#include "gpfeat/exprtree/format.hpp"

namespace gpfeat {

inline constexpr int kReportSchemaVersion = 1;

namespace detail {

inline std::string report_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Names may contain commas or quotes in user data; quote them when they do.
inline std::string csv_cell(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

} // namespace detail

// One line per entry, tab separated: fitness, raw metric, nodes, prefix, infix.
inline void write_top_expressions(std::ostream& out, const std::vector<HallOfFameEntry>& entries, const FeatureSet& names)
{
    char buf[96];
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof buf, "%.6f\t%.6f\t%zu\t", e.record.fitness, e.record.raw_metric, e.record.node_count);
        out << buf << e.expr << '\t' << to_infix(e.tree, names) << '\n';
    }
}

// Square report in combined-triangle layout: counts below the diagonal,
// conditional means above it, diagonal blank. Means with no support are blank.
inline void write_combined_triangle_csv(std::ostream& out, const CooccurrenceReport& r)
{
    if (!r.square()) {
        throw ContractViolation("combined-triangle layout needs a square report");
    }
    out << "item";
    for (const auto& n : r.col_names) {
        out << ',' << detail::csv_cell(n);
    }
    out << '\n';
    for (std::size_t i = 0; i < r.rows(); ++i) {
        out << detail::csv_cell(r.row_names[i]);
        for (std::size_t j = 0; j < r.cols(); ++j) {
            out << ',';
            if (i > j) {
                out << r.count(i, j);
            } else if (i < j && r.count(i, j) > 0) {
                out << detail::report_number(r.mean(i, j));
            }
        }
        out << '\n';
    }
}

inline void write_count_matrix_csv(std::ostream& out, const CooccurrenceReport& r)
{
    out << "item";
    for (const auto& n : r.col_names) {
        out << ',' << detail::csv_cell(n);
    }
    out << '\n';
    for (std::size_t i = 0; i < r.rows(); ++i) {
        out << detail::csv_cell(r.row_names[i]);
        for (std::size_t j = 0; j < r.cols(); ++j) {
            out << ',' << r.count(i, j);
        }
        out << '\n';
    }
}

inline void write_mean_matrix_csv(std::ostream& out, const CooccurrenceReport& r)
{
    out << "item";
    for (const auto& n : r.col_names) {
        out << ',' << detail::csv_cell(n);
    }
    out << '\n';
    for (std::size_t i = 0; i < r.rows(); ++i) {
        out << detail::csv_cell(r.row_names[i]);
        for (std::size_t j = 0; j < r.cols(); ++j) {
            out << ',';
            if (r.count(i, j) > 0) {
                out << detail::report_number(r.mean(i, j));
            }
        }
        out << '\n';
    }
}

inline void write_trajectory_csv(std::ostream& out, const TrajectorySeries& s)
{
    out << "eval,best_so_far,running_average\n";
    for (std::size_t t = 0; t < s.evaluation.size(); ++t) {
        out << s.evaluation[t] << ',' << detail::report_number(s.best_so_far[t]) << ',' << detail::report_number(s.running_average[t]) << '\n';
    }
}

inline nlohmann::ordered_json to_json(const FiveNumberSummary& s)
{
    nlohmann::ordered_json j;
    j["min"] = s.min;
    j["q1"] = s.q1;
    j["median"] = s.median;
    j["q3"] = s.q3;
    j["max"] = s.max;
    return j;
}

// Heatmap of pair counts. Cell colour runs linearly from white (0) to
// rgb(8,48,107) at the largest count in the report; the scale is written into
// the SVG as a comment. Means appear as cell tooltips.
inline void write_heatmap_svg(std::ostream& out, const CooccurrenceReport& r, const std::string& title)
{
    constexpr int cell = 18;
    constexpr int margin = 90;
    std::size_t maxCount = 0;
    for (auto c : r.pair_count) {
        maxCount = std::max(maxCount, c);
    }
    const auto width = margin + static_cast<int>(r.cols()) * cell + 10;
    const auto height = margin + static_cast<int>(r.rows()) * cell + 10;
    auto escape = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            switch (c) {
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '&': o += "&amp;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
            }
        }
        return o;
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    out << "<!-- colour scale: linear, white = 0, rgb(8,48,107) = " << maxCount << " -->\n";
    out << "<text x=\"4\" y=\"12\" font-size=\"12\">" << escape(title) << "</text>\n";
    for (std::size_t j = 0; j < r.cols(); ++j) {
        const int x = margin + static_cast<int>(j) * cell + cell / 2;
        out << "<text transform=\"translate(" << x << "," << margin - 4 << ") rotate(-60)\">" << escape(r.col_names[j]) << "</text>\n";
    }
    for (std::size_t i = 0; i < r.rows(); ++i) {
        const int y = margin + static_cast<int>(i) * cell;
        out << "<text x=\"" << margin - 4 << "\" y=\"" << y + cell - 5 << "\" text-anchor=\"end\">" << escape(r.row_names[i]) << "</text>\n";
        for (std::size_t j = 0; j < r.cols(); ++j) {
            const double t = maxCount ? static_cast<double>(r.count(i, j)) / static_cast<double>(maxCount) : 0.0;
            const auto mix = [t](int hi) { return static_cast<int>(std::lround(255.0 + t * (hi - 255))); };
            out << "<rect x=\"" << margin + static_cast<int>(j) * cell << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"rgb(" << mix(8) << ',' << mix(48) << ',' << mix(107) << ")\" stroke=\"#ccc\"><title>" << escape(r.row_names[i])
                << " / " << escape(r.col_names[j]) << ": " << r.count(i, j);
            if (r.count(i, j) > 0) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.4f", r.mean(i, j));
                out << ", mean " << buf;
            }
            out << "</title></rect>\n";
        }
    }
    out << "</svg>\n";
}

} // namespace gpfeat
