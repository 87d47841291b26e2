#pragma once

#include <optional>
#include <string>

#include "cheese/construction.hpp"

namespace cheese::tools {

/// Square viewport centered at (cx, cy) with the given half width.
struct RenderWindow {
    double cx = 0.0;
    double cy = 0.0;
    double half = 1.0;
};

/// SVG picture of the square outline and every deletion disc; transplant
/// discs in steel blue, provider discs in firebrick. The y axis is flipped so
/// the mathematical orientation matches the picture. Deterministic output:
/// equal configurations render to identical bytes.
std::string render_svg(const CheeseConfig& cfg,
                       std::optional<RenderWindow> window = std::nullopt);

} // namespace cheese::tools
