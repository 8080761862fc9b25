#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zerocap/geometry.hpp"
#include "zerocap/shape.hpp"

namespace zerocap {

inline constexpr double kDefaultMatchTol = 0.1;  // meters

/// Optimal assignment of final positions to truth points. Pairs farther
/// apart than `tol` are forbidden; the assignment matches as many robots
/// as possible and, among those, minimises the summed distance.
/// matched[i] is true iff robot i received a truth point within tol.
std::vector<bool> match_positions(const std::vector<Point2>& final_positions, const std::vector<Point2>& truth, double tol);

/// Robot i against truth point i only.
std::vector<bool> match_by_index(const std::vector<Point2>& final_positions, const std::vector<Point2>& truth, double tol);

struct Metrics {
  int sr = 0;
  double gcr = 0.0;
};

/// gcr = matched / N; sr = 1 iff every robot matched.
Metrics compute_metrics(const std::vector<bool>& matched);

struct ValidationResult {
  bool passed = false;
  std::vector<bool> per_robot;  // all true iff passed
  std::string diagnostics;
};

inline double default_max_gap(double caging_offset) { return 2.0 * caging_offset + 0.2; }

/// Pass iff no robot is strictly inside the polygon, every polygon vertex
/// lies in the convex hull of the robots, and no chord between angularly
/// adjacent robots (about the centroid) exceeds max_gap.
ValidationResult validate_caging(const std::vector<Point2>& positions, const ShapeGraph& g, double max_gap);

/// Pass iff every robot is strictly inside and all pairs are >= min_sep apart.
ValidationResult validate_infill(const std::vector<Point2>& positions, const ShapeGraph& g, double min_sep);

/// Pass iff every robot matches a ground-truth point. Throws MissingGroundTruth.
ValidationResult validate_general(const std::vector<Point2>& positions, const std::optional<std::vector<Point2>>& truth,
                                  double tol);

}  // namespace zerocap
