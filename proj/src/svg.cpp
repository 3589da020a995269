#include "rqip/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <limits>

#include "rqip/errors.hpp"

namespace rqip {

namespace {

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string tick_label(double v) {
    return fmt::format("{:.3g}", v);
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotCurve>& curves) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& c : curves) {
        for (const auto& [x, y] : c.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin < xmax)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymin < ymax)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kHeight - kBottom - (y - ymin) / (ymax - ymin) * plot_h; };

    std::ofstream out(path);
    if (!out) throw CapacityError("write_svg_plot: cannot open " + path);
    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "viewBox=\"0 0 {} {}\">\n",
        kWidth, kHeight, kWidth, kHeight);
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << fmt::format(
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"15\">{}</text>\n",
        kWidth / 2, title);

    // axes with 5 ticks each
    out << fmt::format(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        kLeft, kTop, plot_w, plot_h);
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        out << fmt::format(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n"
            "<text x=\"{0}\" y=\"{3}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
            "font-size=\"11\">{4}</text>\n",
            px(xv), kHeight - kBottom, kHeight - kBottom + 5, kHeight - kBottom + 18,
            tick_label(xv));
        out << fmt::format(
            "<line x1=\"{1}\" y1=\"{0}\" x2=\"{2}\" y2=\"{0}\" stroke=\"black\"/>\n"
            "<text x=\"{3}\" y=\"{4}\" text-anchor=\"end\" font-family=\"sans-serif\" "
            "font-size=\"11\">{5}</text>\n",
            py(yv), kLeft - 5, kLeft, kLeft - 8, py(yv) + 4, tick_label(yv));
    }
    out << fmt::format(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\">{}</text>\n",
        kLeft + plot_w / 2, kHeight - 12, x_label);
    out << fmt::format(
        "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        "font-size=\"13\" transform=\"rotate(-90 16 {0})\">{1}</text>\n",
        kTop + plot_h / 2, y_label);

    double legend_y = kTop + 14;
    for (const auto& c : curves) {
        std::string pts;
        for (const auto& [x, y] : c.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            pts += fmt::format("{:.2f},{:.2f} ", px(x), py(y));
        }
        out << fmt::format(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", pts,
            c.color);
        out << fmt::format(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" "
            "stroke-width=\"3\"/>\n"
            "<text x=\"{4}\" y=\"{5}\" font-family=\"sans-serif\" font-size=\"11\">{6}</text>\n",
            kLeft + plot_w - 150, legend_y, kLeft + plot_w - 130, c.color, kLeft + plot_w - 124,
            legend_y + 4, c.name);
        legend_y += 16;
    }
    out << "</svg>\n";
}

}  // namespace rqip
