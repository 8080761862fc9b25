#include "zerocap/render.hpp"

#include <algorithm>
#include <cmath>

namespace zerocap {

namespace {

void put(Image& img, int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  for (int k = 0; k < 3; ++k) img.at(x, y, k) = c[k];
}

}  // namespace

void draw_line(Image& img, Point2 a, Point2 b, Rgb color) {
  const double len = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y));
  const int steps = std::max(1, static_cast<int>(std::ceil(len)));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    put(img, static_cast<int>(std::lround(a.x + (b.x - a.x) * t)), static_cast<int>(std::lround(a.y + (b.y - a.y) * t)),
        color);
  }
}

void draw_ring(Image& img, Point2 center, double radius, Rgb color) {
  const int r = static_cast<int>(std::ceil(radius + 1.0));
  const int cx = static_cast<int>(std::lround(center.x));
  const int cy = static_cast<int>(std::lround(center.y));
  for (int y = cy - r; y <= cy + r; ++y)
    for (int x = cx - r; x <= cx + r; ++x) {
      const double d = std::hypot(x - center.x, y - center.y);
      if (d <= radius + 0.5 && d >= radius - 1.5) put(img, x, y, color);
    }
}

Image render_frame(const EnvironmentScene& scene, const ShapeGraph* g, const std::vector<Point2>& positions,
                   Rgb marker) {
  Image img = scene.image.to_rgb();
  if (g) {
    for (const auto& [i, j] : g->edges)
      draw_line(img, world_to_pixel(g->vertices[i], scene.world_scale), world_to_pixel(g->vertices[j], scene.world_scale),
                kOutline);
  }
  const double radius = std::max(3.0, std::min(img.width, img.height) / 80.0);
  for (const auto& p : positions) draw_ring(img, world_to_pixel(p, scene.world_scale), radius, marker);
  return img;
}

}  // namespace zerocap
