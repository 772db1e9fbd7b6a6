#pragma once

#include <string>

#include "lpht/drawing.hpp"

namespace lpht {

/// Levels as horizontal lines (level 1 at the bottom), vertex at x = 60 * (position + 1).
/// Crossings are marked with red circles.
std::string render_level_svg(const ProperLevelGraph& g, const LevelDrawing& d);

/// Level i on the circle of radius 40 * i, vertex at angle 2 pi * position / level size.
/// Each gap is drawn cut open along its reference edge, so edges cross exactly where the
/// combinatorial model counts a crossing.
std::string render_radial_svg(const ProperLevelGraph& g, const ReferenceSets& refs, const RadialDrawing& d);

}  // namespace lpht
