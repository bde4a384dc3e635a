#pragma once

#include <optional>
#include <string>

#include "grassfold/arrangement.hpp"

namespace grassfold {

struct SvgOptions {
    double x0 = -20, y0 = -20, x1 = 220, y1 = 220;  // affine window
    int width = 640, height = 640;
    bool labels = true;
};

// Renders a plane configuration and/or arrangement (ambient P^2) as SVG.
// Points become labeled dots, rank-1 subspaces become clipped line segments,
// unmarked rank-0 arrangement elements become small markers.
std::string render_svg(const std::optional<Configuration>& points,
                       const std::optional<LinearConfiguration>& arrangement,
                       const SvgOptions& opt = {});

}  // namespace grassfold
