#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "zerocap/geometry.hpp"
#include "zerocap/raster.hpp"

namespace zerocap {

inline constexpr double kDefaultEpsilonPx = 2.0;
inline constexpr int kBinaryMatrixSize = 100;

/// Boundary of the object as one closed cycle v0 -> v1 -> ... -> v0.
struct ShapeGraph {
  std::vector<Point2> vertices;  // world frame, meters
  std::vector<PixelPoint> pixel_vertices;  // same vertices in pixel coordinates
  std::vector<std::pair<int, int>> edges;
  double perimeter = 0.0;
  Point2 centroid;
  Box2 bounding_box;
};

enum class DescriptorVariant { EdgesOnly, EdgesAndVertices, BinaryMatrix };

std::string_view to_string(DescriptorVariant v);  // edges | edges-vertices | binary-matrix
std::optional<DescriptorVariant> parse_descriptor_variant(std::string_view s);

struct DescriptorText {
  DescriptorVariant variant = DescriptorVariant::EdgesOnly;
  std::string body;
  std::size_t char_count = 0;
};

/// Keeps the largest 4-connected component, fills its holes and
/// despeckles (3x3 median vote at pixels with no like-valued
/// 8-neighbor); the component and fill steps run again afterwards.
BinaryMask preprocess_mask(const BinaryMask& mask);

/// Moore-neighbor boundary following with Jacob's stopping criterion.
/// Returns distinct boundary pixels starting at the topmost-then-leftmost
/// one, positive signed area in image coordinates. One-pixel-wide regions
/// (no 2x2 foreground block) are rejected. Where the boundary passes a
/// pixel twice (spurs, one-pixel necks) only the larger sub-loop is kept.
std::vector<PixelPoint> trace_contour(const BinaryMask& mask);

/// Split-and-merge polygonal approximation of a closed contour. Vertices
/// are a subset of contour points; every dropped point lies within
/// `epsilon_px` of its polygon edge; the polygon is simple.
ShapeGraph simplify_to_graph(const std::vector<PixelPoint>& contour, double epsilon_px, double scale);

/// preprocess_mask -> trace_contour -> simplify_to_graph.
ShapeGraph describe_mask(const BinaryMask& mask, double epsilon_px, double scale);

/// Empty string when the edge set is one Hamiltonian cycle over distinct
/// vertices with no self-loops; otherwise the reason it is not.
std::string graph_structure_problem(const ShapeGraph& g);

/// `mask` is required only for BinaryMatrix.
DescriptorText serialize_descriptor(const ShapeGraph& g, DescriptorVariant variant, const BinaryMask* mask = nullptr);

/// Nearest-neighbor resample to width x height.
BinaryMask resize_nearest(const BinaryMask& mask, int width, int height);

nlohmann::json graph_to_json(const ShapeGraph& g);

}  // namespace zerocap
