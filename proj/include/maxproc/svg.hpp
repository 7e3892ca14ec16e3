#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "maxproc/errors.hpp"

namespace maxproc {

// One polyline of a plot.
struct SvgSeries {
    std::vector<std::pair<double, double>> points;
    std::string color = "#1f6fb5";
    bool dashed = false;
    std::string label;
};

namespace detail {

// round a raw interval to a 1/2/5 tick spacing
inline double nice_step(double span, int target_ticks) {
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

inline std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace detail

// Standalone SVG line plot: axes, 1/2/5 ticks, optional legend.  Output is a
// pure function of the inputs, so regenerating the file is byte-identical.
inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::string& xlabel, const std::string& ylabel,
                           const std::vector<SvgSeries>& series, int width = 880,
                           int height = 560) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin < xmax)) {
        xmin = 0;
        xmax = 1;
    }
    if (!(ymin < ymax)) {
        ymin = 0;
        ymax = 1;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const int ml = 70, mr = 20, mt = 40, mb = 55;
    const double pw = width - ml - mr, ph = height - mt - mb;
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    // ticks and grid
    const double xstep = detail::nice_step(xmax - xmin, 8);
    const double ystep = detail::nice_step(ymax - ymin, 7);
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-9 * xstep; x += xstep) {
        svg << "<line x1=\"" << X(x) << "\" y1=\"" << mt << "\" x2=\"" << X(x) << "\" y2=\""
            << mt + ph << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << X(x) << "\" y=\"" << mt + ph + 16
            << "\" text-anchor=\"middle\">" << detail::num(x) << "</text>\n";
    }
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-9 * ystep; y += ystep) {
        svg << "<line x1=\"" << ml << "\" y1=\"" << Y(y) << "\" x2=\"" << ml + pw << "\" y2=\""
            << Y(y) << "\" stroke=\"#ddd\"/>\n";
        svg << "<text x=\"" << ml - 6 << "\" y=\"" << Y(y) + 4
            << "\" text-anchor=\"end\">" << detail::num(y) << "</text>\n";
    }
    svg << "</g>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.6\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            svg << detail::num(X(x)) << "," << detail::num(Y(y)) << " ";
        }
        svg << "\"/>\n";
    }

    // legend
    int ly = mt + 14;
    for (const auto& s : series) {
        if (s.label.empty()) continue;
        svg << "<line x1=\"" << ml + 12 << "\" y1=\"" << ly << "\" x2=\"" << ml + 40 << "\" y2=\""
            << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"1.6\""
            << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        svg << "<text x=\"" << ml + 46 << "\" y=\"" << ly + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
        ly += 18;
    }

    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xlabel
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << mt + ph / 2 << ")\">" << ylabel << "</text>\n";
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) throw Error("write_svg_plot: cannot open " + path);
    out << svg.str();
    if (!out) throw Error("write_svg_plot: write failed for " + path);
}

}  // namespace maxproc
