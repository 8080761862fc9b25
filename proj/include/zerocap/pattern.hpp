#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zerocap/client.hpp"
#include "zerocap/scene.hpp"
#include "zerocap/shape.hpp"

namespace zerocap {

struct PatternPrompt {
  std::string body;
  DescriptorVariant descriptor_variant = DescriptorVariant::EdgesOnly;
  int robot_count = 1;
  std::size_t estimated_tokens = 0;  // ceil(bytes / 4)
};

/// Scene extent quoted in the prompt's frame preamble.
struct PromptFrame {
  Box2 bounds;
};

PatternPrompt build_prompt(std::string_view pattern_instruction, const DescriptorText& descriptor, int robot_count,
                           const std::optional<PromptFrame>& frame = std::nullopt);

/// The single follow-up sent when the first reply does not parse.
std::string reprompt_body(const PatternPrompt& prompt, std::string_view problem);

/// Accepts "x,y" lines, "(x, y)" tuples, bracketed lists and {"x":..,"y":..}
/// objects. Throws WrongCount unless exactly n pairs are present, and
/// MalformedNumber when a coordinate-shaped line holds a non-number.
std::vector<Point2> parse_coordinates(std::string_view text, std::size_t n);

/// One "x,y" line per point, shortest round-trip decimal form.
std::string format_coordinates(const std::vector<Point2>& points);

/// Asks the model, reprompts once on a parse failure, then checks bounds.
DeploymentPlan generate_coordinates_llm(const PatternPrompt& prompt, TextClient& client, const Box2& bounds);

struct SolverParams {
  double caging_offset = 0.15;  // meters outward from the boundary
  double infill_margin = 0.10;  // meters inset from the boundary
  double min_separation = 0.10;  // meters between infill robots

  void validate() const;
};

/// Deterministic reference placement per task category:
///  - Caging: n points at equal arc-length spacing along the boundary
///    offset by caging_offset (edges shifted outward, circular arcs about
///    convex corners), starting on the vertex 0 bisector.
///  - General: the n sharpest-turning vertices offset outward, padded with
///    points spaced along the same offset curve when n exceeds the vertex
///    count.
///  - Infill: a hexagonal lattice centered on the centroid, spacing shrunk
///    until n sites fall inside the infill_margin inset; the centroid alone
///    when n == 1.
DeploymentPlan generate_coordinates_geometric(TaskCategory category, const ShapeGraph& g, int n,
                                              const SolverParams& params);

/// Optional post-pass: permutes targets to minimise the summed travel
/// distance from `starts`.
DeploymentPlan reassign_min_distance(const DeploymentPlan& plan, const std::vector<Point2>& starts);

}  // namespace zerocap
