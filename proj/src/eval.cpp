#include "zerocap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "zerocap/assignment.hpp"
#include "zerocap/error.hpp"

namespace zerocap {

std::vector<bool> match_positions(const std::vector<Point2>& final_positions, const std::vector<Point2>& truth, double tol) {
  const std::size_t n = final_positions.size();
  if (truth.size() != n)
    throw Error(ErrorCode::InvariantViolation, "match: " + std::to_string(n) + " positions vs " +
                                                   std::to_string(truth.size()) + " truth points");
  if (n == 0) return {};
  // Any forbidden pair costs more than all allowed pairs together, so the
  // optimum first maximises the matched count and then minimises distance.
  const double forbidden = static_cast<double>(n) * std::max(tol, 0.0) + 1.0;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distance(final_positions[i], truth[j]);
      cost[i][j] = d <= tol ? d : forbidden;
    }
  const auto col = solve_assignment(cost);
  std::vector<bool> matched(n);
  for (std::size_t i = 0; i < n; ++i) matched[i] = distance(final_positions[i], truth[col[i]]) <= tol;
  return matched;
}

std::vector<bool> match_by_index(const std::vector<Point2>& final_positions, const std::vector<Point2>& truth, double tol) {
  if (truth.size() != final_positions.size())
    throw Error(ErrorCode::InvariantViolation, "match: position and truth counts differ");
  std::vector<bool> matched(truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) matched[i] = distance(final_positions[i], truth[i]) <= tol;
  return matched;
}

Metrics compute_metrics(const std::vector<bool>& matched) {
  if (matched.empty()) throw Error(ErrorCode::InvariantViolation, "metrics: need at least one robot");
  const auto hits = static_cast<std::size_t>(std::count(matched.begin(), matched.end(), true));
  Metrics m;
  m.gcr = static_cast<double>(hits) / static_cast<double>(matched.size());
  m.sr = hits == matched.size() ? 1 : 0;
  return m;
}

namespace {

void require_graph(const ShapeGraph& g) {
  if (const std::string problem = graph_structure_problem(g); !problem.empty())
    throw Error(ErrorCode::DegenerateGraph, problem);
  if (std::abs(signed_area(g.vertices)) == 0.0) throw Error(ErrorCode::DegenerateGraph, "zero-area polygon");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

ValidationResult validate_caging(const std::vector<Point2>& positions, const ShapeGraph& g, double max_gap) {
  require_graph(g);
  ValidationResult r;
  const std::size_t n = positions.size();
  r.per_robot.assign(n, false);
  if (n < 3) {
    r.diagnostics = "caging needs at least 3 robots";
    return r;
  }
  std::vector<bool> outside(n);
  std::size_t inside_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    outside[i] = locate_point(g.vertices, positions[i]) != PointLocation::Inside;
    if (!outside[i]) ++inside_count;
  }
  std::vector<std::string> problems;
  if (inside_count > 0) problems.push_back(std::to_string(inside_count) + " robot(s) inside the object");

  const auto hull = convex_hull(positions);
  std::size_t uncovered = 0;
  for (const auto& v : g.vertices)
    if (hull.size() < 3 || !in_convex_polygon(hull, v)) ++uncovered;
  if (uncovered > 0) problems.push_back("hull misses " + std::to_string(uncovered) + " object vertex(es)");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const Point2 c = g.centroid;
  std::vector<double> angle(n);
  for (std::size_t i = 0; i < n; ++i) angle[i] = std::atan2(positions[i].y - c.y, positions[i].x - c.x);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return angle[a] < angle[b] || (angle[a] == angle[b] && a < b);
  });
  double largest = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    largest = std::max(largest, distance(positions[order[k]], positions[order[(k + 1) % n]]));
  if (largest > max_gap) problems.push_back("gap " + fmt(largest) + " m exceeds " + fmt(max_gap) + " m");

  r.passed = problems.empty();
  const bool global_ok = uncovered == 0 && largest <= max_gap;
  for (std::size_t i = 0; i < n; ++i) r.per_robot[i] = outside[i] && global_ok;
  for (const auto& p : problems) r.diagnostics += (r.diagnostics.empty() ? "" : "; ") + p;
  if (r.passed) r.diagnostics = "largest gap " + fmt(largest) + " m";
  return r;
}

ValidationResult validate_infill(const std::vector<Point2>& positions, const ShapeGraph& g, double min_sep) {
  require_graph(g);
  ValidationResult r;
  const std::size_t n = positions.size();
  r.per_robot.assign(n, true);
  std::size_t outside = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (locate_point(g.vertices, positions[i]) != PointLocation::Inside) {
      r.per_robot[i] = false;
      ++outside;
    }
  }
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(positions[i], positions[j]);
      closest = std::min(closest, d);
      if (d < min_sep) {
        r.per_robot[i] = false;
        r.per_robot[j] = false;
      }
    }
  r.passed = n > 0 && std::all_of(r.per_robot.begin(), r.per_robot.end(), [](bool b) { return b; });
  if (outside > 0) r.diagnostics = std::to_string(outside) + " robot(s) not strictly inside";
  if (closest < min_sep)
    r.diagnostics += std::string(r.diagnostics.empty() ? "" : "; ") + "separation " + fmt(closest) + " m below " + fmt(min_sep) + " m";
  if (n == 0) r.diagnostics = "no robots";
  return r;
}

ValidationResult validate_general(const std::vector<Point2>& positions, const std::optional<std::vector<Point2>>& truth,
                                  double tol) {
  if (!truth) throw Error(ErrorCode::MissingGroundTruth, "general tasks are judged against ground truth labels");
  ValidationResult r;
  r.per_robot = match_positions(positions, *truth, tol);
  const auto hits = std::count(r.per_robot.begin(), r.per_robot.end(), true);
  r.passed = !r.per_robot.empty() && static_cast<std::size_t>(hits) == r.per_robot.size();
  r.diagnostics = std::to_string(hits) + "/" + std::to_string(r.per_robot.size()) + " matched within " + fmt(tol) + " m";
  return r;
}

}  // namespace zerocap
