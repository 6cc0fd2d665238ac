#pragma once

// Flat-file renderers: sweep CSV, analytic comparison CSV, SVG line plot.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cvm/analytic.hpp"
#include "cvm/errors.hpp"
#include "cvm/experiment.hpp"

namespace cvm::report {

inline constexpr std::string_view kSweepHeader =
    "h,x1,y1,y2,y3,w1,w2,w3,z1,z2,z3,z4,z5,z6,delta,enthalpy,neg_entropy,free_energy,phase,trials";

/// Six significant digits, "%.6g".
inline std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6g", v);
    return buf.data();
}

inline std::string fmt(const analytic::Value& v) { return v ? fmt(*v) : std::string("div"); }

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << kSweepHeader << '\n';
    for (const auto& r : rows) {
        const auto& m = r.mean;
        out << fmt(r.h) << ',' << fmt(m.x[0]);
        for (double v : m.y) out << ',' << fmt(v);
        for (double v : m.w) out << ',' << fmt(v);
        for (double v : m.z) out << ',' << fmt(v);
        out << ',' << fmt(r.delta) << ',' << fmt(r.enthalpy) << ',' << fmt(r.neg_entropy) << ','
            << fmt(r.free_energy) << ',' << to_string(r.phase) << ',' << r.trials << '\n';
    }
}

/// One parsed sweep CSV line, keyed by column name.
struct CsvRecord {
    std::map<std::string, std::string, std::less<>> fields;

    double number(std::string_view key) const {
        const auto it = fields.find(key);
        if (it == fields.end()) throw ParseError("missing column " + std::string(key), 0);
        return std::stod(it->second);
    }
    const std::string& text(std::string_view key) const {
        const auto it = fields.find(key);
        if (it == fields.end()) throw ParseError("missing column " + std::string(key), 0);
        return it->second;
    }
};

inline std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline std::vector<CsvRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty CSV", 1);
    const auto header = split_commas(line);
    std::vector<CsvRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cells = split_commas(line);
        if (cells.size() != header.size()) throw ParseError("column count mismatch", line_no);
        CsvRecord rec;
        for (std::size_t i = 0; i < cells.size(); ++i) rec.fields.emplace(header[i], cells[i]);
        records.push_back(std::move(rec));
    }
    return records;
}

/// Minimized z3 per h from a sweep CSV, taken from the given phase.
inline std::vector<std::pair<double, double>> experimental_z3(const std::vector<CsvRecord>& rows,
                                                              Phase phase = Phase::post_perturb) {
    std::vector<std::pair<double, double>> out;
    for (const auto& r : rows)
        if (r.text("phase") == to_string(phase)) out.emplace_back(r.number("h"), r.number("z3"));
    return out;
}

/// h,z3_analyt1,z3_analyt2[,z3_experimental]. Divergent points render as "div";
/// h values with no matching sweep row leave the experimental cell empty.
inline void write_analytic_csv(const std::vector<analytic::AnalyticPoint>& points,
                               std::ostream& out,
                               const std::vector<std::pair<double, double>>* experimental = nullptr) {
    out << "h,z3_analyt1,z3_analyt2";
    if (experimental) out << ",z3_experimental";
    out << '\n';
    for (const auto& p : points) {
        out << fmt(p.h) << ',' << fmt(p.z3_current) << ',' << fmt(p.z3_previous);
        if (experimental) {
            out << ',';
            const auto it = std::find_if(experimental->begin(), experimental->end(),
                                         [&](const auto& e) { return std::fabs(e.first - p.h) < 1e-6; });
            if (it != experimental->end()) out << fmt(it->second);
        }
        out << '\n';
    }
}

/// Line plot of y2, delta, enthalpy, neg_entropy and free_energy against h for
/// one phase. Self-contained SVG, no scripts.
inline void write_sweep_svg(const std::vector<SweepRow>& rows, std::ostream& out,
                            Phase phase = Phase::post_perturb) {
    struct Series {
        const char* name;
        const char* color;
        std::vector<std::pair<double, double>> pts;
    };
    std::array<Series, 5> series{{{"y2", "#2a9d2a", {}},
                                  {"delta", "#1f9bb4", {}},
                                  {"enthalpy", "#d62728", {}},
                                  {"neg_entropy", "#9467bd", {}},
                                  {"free_energy", "#222222", {}}}};
    for (const auto& r : rows) {
        if (r.phase != phase) continue;
        series[0].pts.emplace_back(r.h, r.mean.y[1]);
        series[1].pts.emplace_back(r.h, r.delta);
        series[2].pts.emplace_back(r.h, r.enthalpy);
        series[3].pts.emplace_back(r.h, r.neg_entropy);
        series[4].pts.emplace_back(r.h, r.free_energy);
    }

    constexpr double W = 720, H = 440, L = 70, R = 150, T = 30, B = 50;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.pts) {
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, y);
            y1 = std::max(y1, y);
        }
    if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
    if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
    const auto sx = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    const auto sy = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
        << "\" stroke=\"black\"/>\n";
    if (y0 < 0.0 && y1 > 0.0)
        out << "<line x1=\"" << L << "\" y1=\"" << sy(0) << "\" x2=\"" << W - R << "\" y2=\""
            << sy(0) << "\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x0 + (x1 - x0) * i / 5.0;
        const double yv = y0 + (y1 - y0) * i / 5.0;
        out << "<text x=\"" << sx(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">"
            << fmt(xv) << "</text>\n";
        out << "<text x=\"" << L - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">"
            << fmt(yv) << "</text>\n";
    }
    out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\">h</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\" points=\"";
        for (auto [x, y] : s.pts) out << sx(x) << ',' << sy(y) << ' ';
        out << "\"/>\n";
        const double ly = T + 20.0 * static_cast<double>(k);
        out << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 40
            << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << W - R + 46 << "\" y=\"" << ly + 4 << "\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace cvm::report
