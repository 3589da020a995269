#pragma once

#include <string>
#include <vector>

namespace rqip {

// Minimal SVG line plots; enough for decay curves, no plotting dependency.
struct PlotCurve {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> points;  // already in plot coordinates
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<PlotCurve>& curves);

}  // namespace rqip
