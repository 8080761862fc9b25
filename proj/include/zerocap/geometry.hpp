#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace zerocap {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
inline Point2 operator*(double s, Point2 a) { return a * s; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

struct Box2 {
  Point2 min;
  Point2 max;

  bool contains(Point2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

enum class PointLocation { Inside, Boundary, Outside };

// Polygons are closed implicitly: vertex n-1 connects back to vertex 0.

/// Shoelace area. Positive when the vertex order turns from +x toward +y,
/// which in the y-down image frame is clockwise on screen.
double signed_area(std::span<const Point2> poly);
double perimeter(std::span<const Point2> poly);
Point2 polygon_centroid(std::span<const Point2> poly);
Box2 bounding_box(std::span<const Point2> pts);

double point_segment_distance(Point2 p, Point2 a, Point2 b);
double distance_to_boundary(std::span<const Point2> poly, Point2 p);

/// Even-odd ray casting. Points within `boundary_eps` of an edge report
/// Boundary rather than Inside or Outside.
PointLocation locate_point(std::span<const Point2> poly, Point2 p,
                           double boundary_eps = 1e-9);

/// Andrew's monotone chain; collinear points dropped; result in positive
/// signed-area order.
std::vector<Point2> convex_hull(std::vector<Point2> pts);

/// True when p lies inside or on the convex polygon `hull` (positive order).
bool in_convex_polygon(std::span<const Point2> hull, Point2 p, double eps = 1e-9);

/// Closed-segment intersection test, including touching and collinear overlap.
bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d);

/// No two non-adjacent edges meet, adjacent edges share only their common
/// vertex, and all vertices are distinct.
bool is_simple_polygon(std::span<const Point2> poly);

bool is_convex_polygon(std::span<const Point2> poly);

}  // namespace zerocap
