#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "hcore/errors.hpp"
#include "hcore/srm.hpp"
#include "hcore/util.hpp"

namespace hcore {

/// Layout of the cumulative-citation plot. Curve sampling and coordinate
/// formatting are fixed so identical inputs give identical documents.
struct PlotSpec {
    int width = 720;
    int height = 480;
    int margin_left = 64;
    int margin_right = 24;
    int margin_top = 32;
    int margin_bottom = 56;
    int curve_samples = 120;  // points along the quadratic segment
};

namespace detail {

struct PlotScale {
    double x0, x1, y0, y1;  // data ranges
    double px0, px1, py0, py1;  // pixel ranges (py grows downward)

    double x(double v) const { return px0 + (v - x0) / (x1 - x0) * (px1 - px0); }
    double y(double v) const { return py0 - (v - y0) / (y1 - y0) * (py0 - py1); }
};

inline std::string svg_point(const PlotScale& s, double x, double y) {
    return strf("%.2f,%.2f", s.x(x), s.y(y));
}

}  // namespace detail

/// Render the series, the two fitted segments meeting at the break point,
/// the break-point and h markers, and an R^2 caption as an SVG document.
inline std::string render_svg(const SrmFit& fit, const CumulativeSeries& series, int h_index,
                              const PlotSpec& spec = {}) {
    using detail::strf;
    if (!fit.converged)
        throw NotConverged("refusing to plot a fit that did not converge");

    const std::size_t k = series.size();
    const double z0 = fit.z0;
    double ymax = 0.0;
    for (double v : series.y) ymax = std::max(ymax, v);
    for (std::size_t j = 0; j < k; ++j)
        ymax = std::max(ymax, detail::eval_model(fit.params, static_cast<double>(j + 1)));
    ymax = std::max(ymax, detail::eval_model(fit.params, z0));

    detail::PlotScale sc;
    sc.x0 = 0.0;
    sc.x1 = static_cast<double>(k) + 1.0;
    sc.y0 = 0.0;
    sc.y1 = ymax * 1.05 + 1.0;
    sc.px0 = spec.margin_left;
    sc.px1 = spec.width - spec.margin_right;
    sc.py0 = spec.height - spec.margin_bottom;
    sc.py1 = spec.margin_top;

    std::string out;
    out += strf(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" "
        "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
        spec.width, spec.height, spec.width, spec.height);
    out += strf("<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n", spec.width, spec.height);

    // axes
    out += strf(
        "<line class=\"axis\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
        "stroke=\"black\"/>\n",
        sc.px0, sc.py0, sc.px1, sc.py0);
    out += strf(
        "<line class=\"axis\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
        "stroke=\"black\"/>\n",
        sc.px0, sc.py0, sc.px0, sc.py1);

    const int x_step = std::max<int>(1, static_cast<int>(std::lround(k / 6.0)));
    for (int t = 0; t <= static_cast<int>(k); t += x_step) {
        const double px = sc.x(t);
        out += strf(
            "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n", px,
            sc.py0, px, sc.py0 + 4.0);
        out += strf(
            "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"middle\">%d</text>\n",
            px, sc.py0 + 18.0, t);
    }
    for (int t = 0; t <= 4; ++t) {
        const double v = sc.y1 * t / 4.0;
        const double py = sc.y(v);
        out += strf(
            "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
            sc.px0 - 4.0, py, sc.px0, py);
        out += strf(
            "<text x=\"%.2f\" y=\"%.2f\" font-size=\"11\" text-anchor=\"end\">%.0f</text>\n",
            sc.px0 - 8.0, py + 4.0, v);
    }
    out += strf(
        "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\" text-anchor=\"middle\">publication "
        "rank</text>\n",
        (sc.px0 + sc.px1) / 2.0, sc.py0 + 38.0);
    out += strf(
        "<text x=\"16\" y=\"%.2f\" font-size=\"12\" text-anchor=\"middle\" "
        "transform=\"rotate(-90 16 %.2f)\">cumulative citations</text>\n",
        (sc.py0 + sc.py1) / 2.0, (sc.py0 + sc.py1) / 2.0);

    // observed cumulative counts
    for (std::size_t j = 0; j < k; ++j)
        out += strf(
            "<circle class=\"obs\" cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"#c62828\"/>\n",
            sc.x(static_cast<double>(j + 1)), sc.y(series.y[j]));

    // quadratic segment, sampled from rank 1 to the break point
    std::string quad_pts;
    const double qx0 = std::min(1.0, z0);
    for (int i = 0; i <= spec.curve_samples; ++i) {
        const double x = qx0 + (z0 - qx0) * i / spec.curve_samples;
        if (!quad_pts.empty()) quad_pts += ' ';
        quad_pts += detail::svg_point(sc, x, detail::eval_model(fit.params, x));
    }
    out += "<polyline class=\"fit-quad\" fill=\"none\" stroke=\"#1565c0\" stroke-width=\"2\" "
           "points=\"" + quad_pts + "\"/>\n";

    // linear segment from the break point to the last rank
    const double lx1 = std::max(z0, static_cast<double>(k));
    std::string lin_pts = detail::svg_point(sc, z0, detail::eval_model(fit.params, z0));
    lin_pts += ' ';
    lin_pts += detail::svg_point(sc, lx1, detail::eval_model(fit.params, lx1));
    out += "<polyline class=\"fit-linear\" fill=\"none\" stroke=\"#2e7d32\" stroke-width=\"2\" "
           "points=\"" + lin_pts + "\"/>\n";

    // break-point marker with the sRM value
    out += strf(
        "<line class=\"break-line\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
        "stroke=\"#555555\" stroke-dasharray=\"4 3\"/>\n",
        sc.x(z0), sc.py0, sc.x(z0), sc.py1);
    out += strf(
        "<text class=\"break-label\" x=\"%.2f\" y=\"%.2f\" font-size=\"12\">sRM = "
        "%.2f</text>\n",
        sc.x(z0) + 5.0, sc.py1 + 14.0, z0);

    // h-index marker on the rank axis
    const double hx = sc.x(static_cast<double>(h_index));
    out += strf(
        "<line class=\"h-line\" x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
        "stroke=\"#8e24aa\" stroke-dasharray=\"2 2\"/>\n",
        hx, sc.py0, hx, sc.py1);
    out += strf(
        "<text class=\"h-label\" x=\"%.2f\" y=\"%.2f\" font-size=\"12\">h = %d</text>\n",
        hx + 5.0, sc.py1 + 30.0, h_index);

    out += strf(
        "<text class=\"caption\" x=\"%.2f\" y=\"%.2f\" font-size=\"12\" "
        "text-anchor=\"end\">R\xc2\xb2 = %.3f</text>\n",
        sc.px1, sc.py1 - 8.0, fit.r_squared);

    out += "</svg>\n";
    return out;
}

}  // namespace hcore
