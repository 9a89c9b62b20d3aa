#pragma once

#include <cstdint>
#include <string>

#include "onion/peel.hpp"

namespace onion::render {

// Styling for every generated figure. Tests compare structure (element counts, the
// data-* attributes), never pixels, so these can change freely.
struct Style {
    static constexpr double unit = 40.0;         // pixels per lattice step
    static constexpr double margin = 30.0;       // pixels around the circle's bounding box
    static constexpr double point_radius = 5.0;
    static constexpr double stroke_width = 2.0;
    static constexpr const char* remaining = "#808080";
    static constexpr const char* vertex = "#007FD4";
    static constexpr const char* circle = "#CC5500";
    static constexpr const char* background = "#FFFFFF";
};

/// SVG for peeling step `step` (1-based) of a planar assignment: points still present
/// (gray), the step's hull vertices (blue, class "vertex"), and the circle through the
/// farthest vertex (orange, data-radius-sq holds the exact squared radius).
/// Throws DomainError if d != 2 or the step is out of range.
std::string step_svg(const LayerAssignment& a, std::uint32_t step);

}  // namespace onion::render
