#pragma once

#include <string>
#include <vector>

namespace setprop::cli {

struct Band {
    std::string label;
    std::vector<double> t_lo;
    std::vector<double> t_hi;
    std::vector<double> lo;
    std::vector<double> hi;
};

struct Line {
    std::string label;
    std::vector<double> t;
    std::vector<double> y;
};

/// Static plot: flowpipe bands as piecewise-constant polygons, trajectories
/// as polylines.
std::string render_svg(const std::string& title, const std::vector<Band>& bands, const std::vector<Line>& lines);

}  // namespace setprop::cli
