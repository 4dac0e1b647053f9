#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "frontspec/cli/format.hpp"

namespace frontspec::cli {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
};

namespace detail {

inline std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string fixed(double v, int digits = 2) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace detail

/// Polyline chart; returns nullopt when there is nothing sensible to draw.
inline std::optional<std::string> line_chart(const ChartSpec& spec, const std::vector<Series>& series) {
    constexpr double W = 640, H = 420, ml = 70, mr = 150, mt = 40, mb = 50;
    auto tx = [&](double v) { return spec.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return spec.log_y ? std::log10(v) : v; };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0) && (!spec.log_y || y > 0);
    };

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    }
    if (!(x0 <= x1) || !(y0 <= y1)) return std::nullopt;
    if (x1 == x0) { x0 -= 0.5; x1 += 0.5; }
    if (y1 == y0) { y0 -= 0.5; y1 += 0.5; }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;

    auto px = [&](double v) { return ml + (tx(v) - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double v) { return H - mb - (ty(v) - y0) / (y1 - y0) * (H - mt - mb); };

    static constexpr std::array<const char*, 6> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
    using detail::fixed;
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(W, 0) + "\" height=\"" + fixed(H, 0) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += "<text x=\"" + fixed(W / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
           detail::escape(spec.title) + "</text>\n";
    out += "<rect x=\"" + fixed(ml) + "\" y=\"" + fixed(mt) + "\" width=\"" + fixed(W - ml - mr) + "\" height=\"" +
           fixed(H - mt - mb) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double fx = x0 + (x1 - x0) * k / 4.0;
        const double fy = y0 + (y1 - y0) * k / 4.0;
        const double sx = ml + (W - ml - mr) * k / 4.0;
        const double sy = H - mb - (H - mt - mb) * k / 4.0;
        out += "<text x=\"" + fixed(sx) + "\" y=\"" + fixed(H - mb + 16) + "\" text-anchor=\"middle\" font-size=\"11\">" +
               detail::tick_label(spec.log_x ? std::pow(10.0, fx) : fx) + "</text>\n";
        out += "<text x=\"" + fixed(ml - 6) + "\" y=\"" + fixed(sy + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
               detail::tick_label(spec.log_y ? std::pow(10.0, fy) : fy) + "</text>\n";
    }
    out += "<text x=\"" + fixed((ml + W - mr) / 2) + "\" y=\"" + fixed(H - 12) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + detail::escape(spec.x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"" + fixed((mt + H - mb) / 2) + "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
           fixed((mt + H - mb) / 2) + ")\">" + detail::escape(spec.y_label) + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = colors[si % colors.size()];
        std::string pts;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            pts += fixed(px(s.x[i])) + "," + fixed(py(s.y[i])) + " ";
        }
        if (pts.empty()) continue;
        pts.pop_back();
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
        const double ly = mt + 16.0 * static_cast<double>(si) + 10.0;
        out += "<line x1=\"" + fixed(W - mr + 10) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(W - mr + 30) + "\" y2=\"" +
               fixed(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + fixed(W - mr + 34) + "\" y=\"" + fixed(ly + 4) + "\" font-size=\"11\">" +
               detail::escape(s.label) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace frontspec::cli
