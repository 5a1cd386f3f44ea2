#pragma once

#include <span>
#include <string>

#include "pettiest/boxes.hpp"
#include "pettiest/core_stats.hpp"
#include "pettiest/prim.hpp"

namespace pettiest {

/// Scatter of a two-column dataset with the boxes drawn as rectangles, the
/// colour running from pale yellow (first box) to dark red (last box).
/// Every box must constrain exactly dimensions {0, 1}.
std::string render_boxes_svg(const Dataset& points, std::span<const Box> boxes);

/// Plots the first two working dimensions of `data` with the covering boxes
/// restricted to them.
std::string render_covering_svg(const Dataset& data, const CoveringReport& report);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace pettiest
