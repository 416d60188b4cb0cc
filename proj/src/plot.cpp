#include "obscbf/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "obscbf/trace_io.hpp"

namespace obscbf {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMargin = 60.0;
constexpr int kTicks = 5;
constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo;
    double hi;
};

Range padded(double lo, double hi) {
    if (hi - lo <= 0.0) {
        const double half = lo == 0.0 ? 1.0 : 0.5 * std::abs(lo);
        return {lo - half, hi + half};
    }
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

}  // namespace

std::string emit_plot(std::span<const LabeledTrace> traces, const std::string& quantity) {
    if (traces.empty()) throw std::invalid_argument("emit_plot: no traces");
    if (quantity.empty()) throw std::invalid_argument("emit_plot: empty quantity");

    std::vector<std::vector<double>> ts;
    std::vector<std::vector<double>> ys;
    double tmin = 0.0, tmax = 0.0, ymin = 0.0, ymax = 0.0;  // y range always spans 0
    bool first = true;
    for (const auto& lt : traces) {
        const SimTrace& tr = lt.trace.get();
        ys.push_back(column_values(tr, quantity));
        ts.push_back(column_values(tr, "t"));
        for (double t : ts.back()) {
            tmin = first ? t : std::min(tmin, t);
            tmax = first ? t : std::max(tmax, t);
            first = false;
        }
        for (double y : ys.back()) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    const Range xr = padded(tmin, tmax);
    const Range yr = padded(ymin, ymax);
    const double left = kMargin, right = kWidth - kMargin, top = kMargin, bottom = kHeight - kMargin;
    const auto px = [&](double t) { return left + (t - xr.lo) / (xr.hi - xr.lo) * (right - left); };
    const auto py = [&](double y) { return bottom - (y - yr.lo) / (yr.hi - yr.lo) * (bottom - top); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";
    svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";

    // axes
    svg += "<line x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", bottom) + "\" x2=\"" +
           fmt("%.2f", right) + "\" y2=\"" + fmt("%.2f", bottom) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", top) + "\" x2=\"" +
           fmt("%.2f", left) + "\" y2=\"" + fmt("%.2f", bottom) + "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= kTicks; ++i) {
        const double tv = xr.lo + (xr.hi - xr.lo) * i / kTicks;
        const double x = px(tv);
        svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", bottom) + "\" x2=\"" +
               fmt("%.2f", x) + "\" y2=\"" + fmt("%.2f", bottom + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", bottom + 18) +
               "\" text-anchor=\"middle\">" + fmt("%.3g", tv) + "</text>\n";
        const double yv = yr.lo + (yr.hi - yr.lo) * i / kTicks;
        const double y = py(yv);
        svg += "<line x1=\"" + fmt("%.2f", left - 5) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" +
               fmt("%.2f", left) + "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", left - 8) + "\" y=\"" + fmt("%.2f", y + 4) +
               "\" text-anchor=\"end\">" + fmt("%.3g", yv) + "</text>\n";
    }
    svg += "<text x=\"" + fmt("%.2f", 0.5 * (left + right)) + "\" y=\"" + fmt("%.2f", kHeight - 15) +
           "\" text-anchor=\"middle\">t [s]</text>\n";
    svg += "<text x=\"15\" y=\"" + fmt("%.2f", 0.5 * (top + bottom)) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 15 " + fmt("%.2f", 0.5 * (top + bottom)) + ")\">" +
           escape(quantity) + "</text>\n";

    // zero line
    svg += "<line class=\"zero\" x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", py(0.0)) + "\" x2=\"" +
           fmt("%.2f", right) + "\" y2=\"" + fmt("%.2f", py(0.0)) +
           "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";

    for (std::size_t k = 0; k < traces.size(); ++k) {
        const char* color = kPalette[k % kPalette.size()];
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < ts[k].size(); ++i) {
            if (i) svg += ' ';
            svg += fmt("%.2f", px(ts[k][i])) + "," + fmt("%.2f", py(ys[k][i]));
        }
        svg += "\"/>\n";

        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        svg += "<line x1=\"" + fmt("%.2f", right - 150) + "\" y1=\"" + fmt("%.2f", ly) + "\" x2=\"" +
               fmt("%.2f", right - 125) + "\" y2=\"" + fmt("%.2f", ly) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", right - 118) + "\" y=\"" + fmt("%.2f", ly + 4) + "\">" +
               escape(traces[k].label) + "</text>\n";
    }
    svg += "</g>\n</svg>\n";
    return svg;
}

}  // namespace obscbf
