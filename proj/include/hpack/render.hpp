#pragma once

#include <string>

#include "hpack/json_io.hpp"
#include "hpack/model.hpp"

namespace hpack {

// SVG drawing of a solution. Every block layout becomes a group translated
// to its occurrence and drawn in its own integer coordinates (y pointing
// up), so element geometry equals the placements; a single scale transform
// at the root sizes the picture. Blocks get their own fill color; repeated
// occurrences of one block differ in hatching.
std::string render_solution_svg(const Instance& instance, const Solution& solution, double scale = 0.0);

// Width/height plane of one child block from an LBBD trace: the area
// hyperbola, the final cut staircase, the excluded widths, and the PLAN,
// ACT, LEFT and RIGHT points of every verification.
std::string render_frontier_svg(const Json& trace, const std::string& block);

}  // namespace hpack
