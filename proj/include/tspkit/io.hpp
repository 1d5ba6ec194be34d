#ifndef TSPKIT_IO_HPP
#define TSPKIT_IO_HPP

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tspkit/graph.hpp"
#include "tspkit/pipeline.hpp"

namespace tspkit {

// Instance formats, all UTF-8 text with `c`-prefixed comment lines:
//   edge:   "p edge <n> <m>" then m lines "e <u> <v> <cost>", 0-based ids
//   matrix: "p matrix <n>" then n rows of n decimals (symmetric, zero diagonal)
//   euc2d:  "p euc2d <n>" then n lines "x y"; costs are Euclidean distances
//           rounded to the nearest 1e-9
inline Graph parse_instance(std::istream& in, const std::string& expected_format = "") {
    std::string line;
    long line_no = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw IngestionError(msg + " (line " + std::to_string(line_no) + ")");
    };

    std::string format;
    int n = 0;
    long m = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "p") fail("expected problem line 'p <format> ...'");
        ls >> format;
        if (format == "edge") {
            if (!(ls >> n >> m) || n < 1 || m < 0) fail("bad 'p edge <n> <m>' line");
        } else if (format == "matrix" || format == "euc2d") {
            if (!(ls >> n) || n < 1) fail("bad 'p " + format + " <n>' line");
        } else {
            fail("unknown format '" + format + "'");
        }
        break;
    }
    if (format.empty()) fail("missing problem line");
    if (!expected_format.empty() && expected_format != format)
        fail("instance declares format '" + format + "' but '" + expected_format +
             "' was requested");

    std::vector<Edge> edges;
    if (format == "edge") {
        long read = 0;
        while (read < m && std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == 'c') continue;
            std::istringstream ls(line);
            std::string tag;
            int u, v;
            double cost;
            if (!(ls >> tag >> u >> v >> cost) || tag != "e")
                fail("bad edge record, expected 'e <u> <v> <cost>'");
            if (u < 0 || u >= n || v < 0 || v >= n) fail("vertex id out of range");
            if (u == v) fail("self-loop rejected");
            if (!(cost >= 0.0) || !std::isfinite(cost))
                fail("edge cost must be finite and nonnegative");
            edges.push_back({u, v, cost});
            ++read;
        }
        if (read < m) fail("expected " + std::to_string(m) + " edge records");
    } else if (format == "matrix") {
        std::vector<std::vector<double>> mat;
        while (static_cast<int>(mat.size()) < n && std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == 'c') continue;
            std::istringstream ls(line);
            std::vector<double> row;
            double v;
            while (ls >> v) row.push_back(v);
            if (static_cast<int>(row.size()) != n) fail("matrix row needs n entries");
            mat.push_back(std::move(row));
        }
        if (static_cast<int>(mat.size()) < n) fail("matrix needs n rows");
        for (int i = 0; i < n; ++i) {
            if (mat[i][i] != 0.0) fail("matrix diagonal must be zero (row " + std::to_string(i) + ")");
            for (int j = i + 1; j < n; ++j) {
                double diff = std::fabs(mat[i][j] - mat[j][i]);
                if (diff > 1e-9 * std::max(1.0, std::fabs(mat[i][j])))
                    fail("matrix is not symmetric at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
                if (!(mat[i][j] >= 0.0) || !std::isfinite(mat[i][j]))
                    fail("matrix entries must be finite and nonnegative");
                edges.push_back({i, j, mat[i][j]});
            }
        }
    } else {  // euc2d
        std::vector<std::pair<double, double>> pts;
        while (static_cast<int>(pts.size()) < n && std::getline(in, line)) {
            ++line_no;
            if (line.empty() || line[0] == 'c') continue;
            std::istringstream ls(line);
            double x, y;
            if (!(ls >> x >> y)) fail("bad coordinate line, expected '<x> <y>'");
            pts.emplace_back(x, y);
        }
        if (static_cast<int>(pts.size()) < n) fail("expected n coordinate lines");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double dx = pts[i].first - pts[j].first;
                double dy = pts[i].second - pts[j].second;
                double d = std::round(std::sqrt(dx * dx + dy * dy) * 1e9) / 1e9;
                edges.push_back({i, j, d});
            }
    }
    return Graph(n, std::move(edges));
}

inline Graph parse_instance_file(const std::string& path, const std::string& format = "") {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open input file: " + path);
    return parse_instance(in, format);
}

namespace report_detail {

inline std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s == "inf") return "1e999";
    return s;
}

}  // namespace report_detail

// Single JSON object, fixed key order, floats at 17 significant digits,
// so identical runs diff cleanly. The "timings" entry is the only
// nondeterministic field.
inline std::string write_report(const TourReport& r, const Tour* tour = nullptr,
                                bool emit_multigraph = false) {
    using report_detail::fmt;
    std::ostringstream out;
    out << "{\n";
    out << "  \"algorithm\": \"" << r.algorithm << "\",\n";
    out << "  \"version\": \"" << kVersion << "\",\n";
    out << "  \"seed\": " << r.seed << ",\n";
    out << "  \"n\": " << r.n << ",\n";
    out << "  \"m\": " << r.m << ",\n";
    out << "  \"lp_objective\": " << fmt(r.lp_objective) << ",\n";
    out << "  \"lp_lower_bound\": " << fmt(r.lp_lower_bound) << ",\n";
    out << "  \"lp_gap\": " << fmt(r.lp_gap) << ",\n";
    out << "  \"support_size\": " << r.support_size << ",\n";
    out << "  \"sparsify_attempts\": " << r.sparsify_attempts << ",\n";
    out << "  \"sparsify_single_shot\": " << (r.sparsify_single_shot ? "true" : "false")
        << ",\n";
    out << "  \"mst_cost\": " << fmt(r.mst_cost) << ",\n";
    out << "  \"join_cost\": " << fmt(r.join_cost) << ",\n";
    out << "  \"walk_cost\": " << fmt(r.walk_cost) << ",\n";
    out << "  \"shortcut_tour_cost\": " << fmt(r.shortcut_tour_cost) << ",\n";
    out << "  \"ratio_to_lower_bound\": " << fmt(r.ratio_to_lower_bound) << ",\n";
    if (tour) {
        out << "  \"tour\": [";
        for (std::size_t i = 0; i < tour->order.size(); ++i)
            out << (i ? ", " : "") << tour->order[i];
        out << "],\n";
    }
    if (emit_multigraph) {
        out << "  \"multigraph\": [";
        bool first = true;
        for (const auto& [id, mult] : r.eulerian_edges.entries()) {
            for (int i = 0; i < mult; ++i) {
                out << (first ? "" : ", ") << id;
                first = false;
            }
        }
        out << "],\n";
    }
    out << "  \"timings\": {";
    for (std::size_t i = 0; i < r.stage_seconds.size(); ++i)
        out << (i ? ", " : "") << "\"" << r.stage_seconds[i].first
            << "\": " << fmt(r.stage_seconds[i].second);
    out << "}\n";
    out << "}\n";
    return out.str();
}

}  // namespace tspkit

#endif
