#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hfrac {

struct PlotSeries {
    std::string label;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label = "t";
    std::string y_label;
    std::vector<double> x;
    std::vector<PlotSeries> series;
};

/// Minimal standalone SVG line plot: one polyline per series, labeled axes,
/// tick values at the ends of each axis. Output depends only on the input.
void write_svg(std::ostream& os, const PlotSpec& plot);

} // namespace hfrac
