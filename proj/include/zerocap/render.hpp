#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "zerocap/raster.hpp"
#include "zerocap/scene.hpp"
#include "zerocap/shape.hpp"

namespace zerocap {

using Rgb = std::array<std::uint8_t, 3>;

inline constexpr Rgb kInitialMarker{30, 80, 230};
inline constexpr Rgb kFinalMarker{20, 190, 60};
inline constexpr Rgb kOutline{255, 255, 255};

/// Scene image as RGB with the object outline (when given) and one ring
/// marker per robot position.
Image render_frame(const EnvironmentScene& scene, const ShapeGraph* g, const std::vector<Point2>& positions,
                   Rgb marker);

void draw_line(Image& img, Point2 a, Point2 b, Rgb color);
void draw_ring(Image& img, Point2 center, double radius, Rgb color);

}  // namespace zerocap
