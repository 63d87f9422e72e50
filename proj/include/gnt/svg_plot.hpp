// svg_plot.hpp — minimal self-contained SVG line plots (one polyline per
// series, linear or log axes)

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gnt::plot {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct Options {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool logx = false;
    bool logy = false;
    int width = 820;
    int height = 560;
};

namespace detail {

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return std::string(buf);
}

inline const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf"};

} // namespace detail

// Render series to an SVG document. Log axes drop non-positive points.
inline std::string render_svg(const std::vector<Series>& series, const Options& opt) {
    if (series.empty()) throw std::invalid_argument("render_svg: no series");

    auto tx = [&opt](double v) { return opt.logx ? std::log10(v) : v; };
    auto ty = [&opt](double v) { return opt.logy ? std::log10(v) : v; };

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("render_svg: series arrays must have equal length");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((opt.logx && !(s.x[i] > 0)) || (opt.logy && !(s.y[i] > 0))) continue;
            const double px = tx(s.x[i]), py = ty(s.y[i]);
            if (!std::isfinite(px) || !std::isfinite(py)) continue;
            if (first) {
                xmin = xmax = px;
                ymin = ymax = py;
                first = false;
            } else {
                xmin = std::min(xmin, px);
                xmax = std::max(xmax, px);
                ymin = std::min(ymin, py);
                ymax = std::max(ymax, py);
            }
        }
    }
    if (first) throw std::invalid_argument("render_svg: no plottable points");
    if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
    if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }

    const double ml = 70, mr = 20, mt = 40, mb = 55;
    const double pw = opt.width - ml - mr, ph = opt.height - mt - mb;
    auto X = [&](double v) { return ml + (tx(v) - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double v) { return mt + ph - (ty(v) - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
        << opt.height << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";
    if (!opt.title.empty())
        svg << "<text x=\"" << opt.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"15\">" << opt.title << "</text>\n";

    // 5 ticks per axis on the transformed scale
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        const double px = ml + pw * i / 4.0;
        const double py = mt + ph - ph * i / 4.0;
        const double vx = opt.logx ? std::pow(10.0, fx) : fx;
        const double vy = opt.logy ? std::pow(10.0, fy) : fy;
        svg << "<line x1=\"" << px << "\" y1=\"" << mt + ph << "\" x2=\"" << px << "\" y2=\""
            << mt + ph + 5 << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << px << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << detail::num(vx) << "</text>\n";
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml << "\" y2=\"" << py
            << "\" stroke=\"#444\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << detail::num(vy) << "</text>\n";
    }
    if (!opt.xlabel.empty())
        svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << opt.height - 12
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << opt.xlabel << "</text>\n";
    if (!opt.ylabel.empty())
        svg << "<text x=\"16\" y=\"" << mt + ph / 2
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
            << "transform=\"rotate(-90 16 " << mt + ph / 2 << ")\">" << opt.ylabel << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = detail::kPalette[si % 7];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if ((opt.logx && !(s.x[i] > 0)) || (opt.logy && !(s.y[i] > 0))) continue;
            if (!std::isfinite(tx(s.x[i])) || !std::isfinite(ty(s.y[i]))) continue;
            pts << detail::num(X(s.x[i])) << ',' << detail::num(Y(s.y[i])) << ' ';
        }
        svg << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << ml + 10 << "\" y=\"" << mt + 16 + 15 * static_cast<int>(si)
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << color << "\">"
            << s.label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace gnt::plot
