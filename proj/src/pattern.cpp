#include "zerocap/pattern.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>

#include "zerocap/assignment.hpp"
#include "zerocap/error.hpp"

namespace zerocap {

namespace {

std::string fmt_m(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string legend(const DescriptorText& d, const std::optional<PromptFrame>& frame) {
  switch (d.variant) {
    case DescriptorVariant::EdgesOnly:
      return "Each line below is one edge of the object's boundary polygon, written (x1,y1)-(x2,y2) in meters.";
    case DescriptorVariant::EdgesAndVertices:
      return "The first line names the polygon vertices v0..vK in boundary order; each following line i is the edge "
             "from v_i to v_(i+1), written (x1,y1)-(x2,y2) in meters.";
    case DescriptorVariant::BinaryMatrix: {
      std::string s = "The object mask resized to a 100x100 grid; row 0 is the top of the scene, '1' marks the object.";
      if (frame) {
        const double cw = (frame->bounds.max.x - frame->bounds.min.x) / kBinaryMatrixSize;
        const double ch = (frame->bounds.max.y - frame->bounds.min.y) / kBinaryMatrixSize;
        s += " Each cell spans " + fmt_m(cw) + " m by " + fmt_m(ch) + " m; cell (0,0) starts at (" +
             fmt_m(frame->bounds.min.x) + "," + fmt_m(frame->bounds.min.y) + ").";
      }
      return s;
    }
  }
  return {};
}

}  // namespace

PatternPrompt build_prompt(std::string_view pattern_instruction, const DescriptorText& descriptor, int robot_count,
                           const std::optional<PromptFrame>& frame) {
  if (robot_count < 1) throw Error(ErrorCode::InvariantViolation, "robot count: must be >= 1");
  const std::string n = std::to_string(robot_count);
  std::string b;
  b += "You plan target positions for a team of point-mass robots.\n";
  b += "Coordinates are in meters; the origin is the top-left of the scene image, x grows to the right and y grows downward.\n";
  if (frame) {
    b += "The scene spans x from " + fmt_m(frame->bounds.min.x) + " to " + fmt_m(frame->bounds.max.x) + " and y from " +
         fmt_m(frame->bounds.min.y) + " to " + fmt_m(frame->bounds.max.y) + ".\n";
  }
  b += legend(descriptor, frame) + "\n";
  b += "Object shape:\n";
  b += descriptor.body;
  if (!descriptor.body.empty() && descriptor.body.back() != '\n') b += '\n';
  b += "Pattern instruction: " + std::string(pattern_instruction) + "\n";
  b += "Number of robots: " + n + "\n";
  b += "Answer with exactly " + n + " lines 'x,y', one target per robot in robot order, and nothing else.\n";

  PatternPrompt p;
  p.descriptor_variant = descriptor.variant;
  p.robot_count = robot_count;
  p.estimated_tokens = (b.size() + 3) / 4;
  p.body = std::move(b);
  return p;
}

std::string reprompt_body(const PatternPrompt& prompt, std::string_view problem) {
  const std::string n = std::to_string(prompt.robot_count);
  return prompt.body + "\nYour previous answer could not be used (" + std::string(problem) + "). Answer again with exactly " +
         n + " lines 'x,y' and nothing else.\n";
}

namespace {

constexpr const char* kNum = R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)";

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

std::vector<Point2> parse_coordinates(std::string_view text, std::size_t n) {
  static const std::regex kCoordLine(R"(^\s*[\(\[]*\s*([^,\s\(\)\[\]]+)\s*,\s*([^,\s\(\)\[\]]+)\s*[\)\]]*\s*,?\s*$)");
  static const std::regex kNumber(std::string("^") + kNum + "$");
  static const std::string kNumGroup = std::string("(") + kNum + ")";
  static const std::regex kPair(std::string(R"("x"\s*:\s*)") + kNumGroup + R"(\s*,\s*"y"\s*:\s*)" + kNumGroup + "|" +
                                kNumGroup + R"(\s*,\s*)" + kNumGroup);

  const std::string s(text);
  std::vector<Point2> pts;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), kPair); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const std::string xs = m[1].matched ? m[1].str() : m[3].str();
    const std::string ys = m[2].matched ? m[2].str() : m[4].str();
    Point2 p;
    if (!parse_double(xs, p.x) || !parse_double(ys, p.y))
      throw Error(ErrorCode::MalformedNumber, "cannot read pair '" + m.str() + "'");
    pts.push_back(p);
  }
  if (pts.size() == n) return pts;

  // Count is off: blame a coordinate-shaped line with non-numeric fields
  // before blaming the count.
  std::size_t line_start = 0;
  while (line_start <= s.size()) {
    std::size_t line_end = s.find('\n', line_start);
    if (line_end == std::string::npos) line_end = s.size();
    const std::string line = s.substr(line_start, line_end - line_start);
    std::smatch m;
    if (std::regex_match(line, m, kCoordLine)) {
      for (int g = 1; g <= 2; ++g)
        if (!std::regex_match(m[g].str(), kNumber))
          throw Error(ErrorCode::MalformedNumber, "'" + m[g].str() + "' is not a number");
    }
    line_start = line_end + 1;
  }
  throw Error(ErrorCode::WrongCount, "found " + std::to_string(pts.size()) + " coordinate pairs, expected " + std::to_string(n));
}

std::string format_coordinates(const std::vector<Point2>& points) {
  std::string out;
  char buf[64];
  for (const auto& p : points) {
    auto r = std::to_chars(buf, buf + sizeof buf, p.x);
    out.append(buf, r.ptr);
    out += ',';
    r = std::to_chars(buf, buf + sizeof buf, p.y);
    out.append(buf, r.ptr);
    out += '\n';
  }
  return out;
}

DeploymentPlan generate_coordinates_llm(const PatternPrompt& prompt, TextClient& client, const Box2& bounds) {
  const auto n = static_cast<std::size_t>(prompt.robot_count);
  CompletionRequest req;
  req.prompt = prompt.body;
  std::vector<Point2> pts;
  try {
    pts = parse_coordinates(client.complete(req), n);
  } catch (const Error& first) {
    if (first.code() != ErrorCode::WrongCount && first.code() != ErrorCode::MalformedNumber) throw;
    req.prompt = reprompt_body(prompt, first.what());
    try {
      pts = parse_coordinates(client.complete(req), n);
    } catch (const Error& second) {
      if (second.code() != ErrorCode::WrongCount && second.code() != ErrorCode::MalformedNumber) throw;
      throw Error(ErrorCode::ParseFailure, std::string("after one reprompt: ") + second.what());
    }
  }
  DeploymentPlan plan{std::move(pts)};
  validate_plan(plan, n, bounds);
  return plan;
}

void SolverParams::validate() const {
  if (!(caging_offset >= 0.0) || !(infill_margin >= 0.0) || !(min_separation >= 0.0))
    throw Error(ErrorCode::InvariantViolation, "solver params: all must be >= 0");
}

namespace {

struct Boundary {
  const std::vector<Point2>& v;
  double orient;  // +1 for positive signed area

  explicit Boundary(const std::vector<Point2>& verts) : v(verts), orient(signed_area(verts) >= 0 ? 1.0 : -1.0) {}

  Point2 edge_normal(std::size_t i) const {
    const Point2 d = v[(i + 1) % v.size()] - v[i];
    const double len = norm(d);
    return Point2{d.y, -d.x} * (orient / len);
  }

  Point2 vertex_normal(std::size_t i) const {
    const std::size_t n = v.size();
    const Point2 sum = edge_normal((i + n - 1) % n) + edge_normal(i);
    const double len = norm(sum);
    if (len < 1e-12) return edge_normal(i);
    return sum * (1.0 / len);
  }

  // Signed turn at vertex i, positive where the polygon is convex.
  double turn(std::size_t i) const {
    const std::size_t n = v.size();
    const Point2 a = v[i] - v[(i + n - 1) % n];
    const Point2 b = v[(i + 1) % n] - v[i];
    return orient * std::atan2(cross(a, b), dot(a, b));
  }
};

// The boundary pushed `offset` outward: straight pieces parallel to the
// edges joined by circular arcs about convex vertices. Reflex vertices
// contribute a zero-length piece at the bisector point. Arc length 0 is
// the middle of the arc about vertex 0.
class OffsetCurve {
 public:
  OffsetCurve(const Boundary& b, double offset) : b_(b), offset_(offset) {
    const std::size_t n = b.v.size();
    arc_.resize(n);
    for (std::size_t i = 0; i < n; ++i) arc_[i] = std::max(0.0, b.turn(i)) * offset;
    for (std::size_t i = 0; i < n; ++i) total_ += arc_[i] + distance(b.v[i], b.v[(i + 1) % n]);
  }

  double total() const { return total_; }

  Point2 at(double s) const {
    const std::size_t n = b_.v.size();
    s = std::fmod(s + arc_[0] / 2.0, total_);
    if (s < 0) s += total_;
    for (std::size_t i = 0; i < n; ++i) {
      if (s < arc_[i]) return arc_point(i, s / arc_[i]);
      s -= arc_[i];
      const Point2 a = b_.v[i], c = b_.v[(i + 1) % n];
      const double len = distance(a, c);
      if (s < len || i + 1 == n) return a + (c - a) * (std::min(s, len) / len) + b_.edge_normal(i) * offset_;
      s -= len;
    }
    return arc_point(0, 0.0);
  }

 private:
  Point2 arc_point(std::size_t i, double t) const {
    const std::size_t n = b_.v.size();
    if (arc_[i] == 0.0) return b_.v[i] + b_.vertex_normal(i) * offset_;
    const Point2 n0 = b_.edge_normal((i + n - 1) % n);
    const double phi = std::atan2(n0.y, n0.x) + b_.orient * b_.turn(i) * t;
    return b_.v[i] + Point2{std::cos(phi), std::sin(phi)} * offset_;
  }

  const Boundary& b_;
  double offset_;
  std::vector<double> arc_;
  double total_ = 0.0;
};

double turning_angle(const std::vector<Point2>& v, std::size_t i) {
  const std::size_t n = v.size();
  const Point2 a = v[i] - v[(i + n - 1) % n];
  const Point2 b = v[(i + 1) % n] - v[i];
  return std::abs(std::atan2(cross(a, b), dot(a, b)));
}

bool in_inset(const std::vector<Point2>& poly, Point2 p, double margin) {
  if (locate_point(poly, p) != PointLocation::Inside) return false;
  return distance_to_boundary(poly, p) >= margin;
}

std::vector<Point2> lattice_sites(const std::vector<Point2>& poly, const Box2& box, Point2 center, double h, double margin) {
  const double row = h * std::numbers::sqrt3 / 2.0;
  std::vector<Point2> sites;
  const long j_lo = static_cast<long>(std::floor((box.min.y - center.y) / row));
  const long j_hi = static_cast<long>(std::ceil((box.max.y - center.y) / row));
  for (long j = j_lo; j <= j_hi; ++j) {
    const double y = center.y + static_cast<double>(j) * row;
    const double shift = center.x + static_cast<double>(j) * h / 2.0;
    const long i_lo = static_cast<long>(std::floor((box.min.x - shift) / h));
    const long i_hi = static_cast<long>(std::ceil((box.max.x - shift) / h));
    for (long i = i_lo; i <= i_hi; ++i) {
      const Point2 p{shift + static_cast<double>(i) * h, y};
      if (in_inset(poly, p, margin)) sites.push_back(p);
    }
  }
  return sites;
}

std::vector<Point2> solve_infill(const ShapeGraph& g, int n, const SolverParams& params) {
  const auto& poly = g.vertices;
  const Point2 c = g.centroid;
  if (n == 1 && in_inset(poly, c, params.infill_margin)) return {c};

  const double area = std::abs(signed_area(poly));
  const Box2 box = g.bounding_box;
  const double diag = distance(box.min, box.max);
  // Lattice pitch never drops below the separation floor (nudged up so
  // rounding in the site coordinates cannot undercut it).
  const double h_floor = std::max(params.min_separation * (1.0 + 1e-9), 1e-6 * diag);
  auto count_ok = [&](double h) { return lattice_sites(poly, box, c, h, params.infill_margin); };

  double h = std::max(h_floor, std::sqrt(2.0 * area / (std::numbers::sqrt3 * n)));
  while (h < 2.0 * diag && count_ok(h).size() >= static_cast<std::size_t>(n)) h *= 1.25;
  std::vector<Point2> sites;
  for (;;) {
    if (h <= h_floor) {
      sites = count_ok(h_floor);
      break;
    }
    sites = count_ok(h);
    if (sites.size() >= static_cast<std::size_t>(n)) break;
    h = std::max(h_floor, h * 0.995);
  }
  if (sites.size() < static_cast<std::size_t>(n))
    throw Error(ErrorCode::InfeasibleInfill, std::to_string(n) + " robots do not fit at separation " +
                                                 std::to_string(params.min_separation) + " m inside the " +
                                                 std::to_string(params.infill_margin) + " m inset");
  if (sites.size() > static_cast<std::size_t>(n)) {
    std::stable_sort(sites.begin(), sites.end(), [&](const Point2& a, const Point2& b) {
      return distance(a, c) < distance(b, c);
    });
    sites.resize(static_cast<std::size_t>(n));
  }
  std::sort(sites.begin(), sites.end(), [](const Point2& a, const Point2& b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  });
  return sites;
}

}  // namespace

DeploymentPlan generate_coordinates_geometric(TaskCategory category, const ShapeGraph& g, int n, const SolverParams& params) {
  if (n < 1) throw Error(ErrorCode::InvariantViolation, "robot count: must be >= 1");
  params.validate();
  if (const std::string problem = graph_structure_problem(g); !problem.empty())
    throw Error(ErrorCode::DegenerateGraph, problem);
  if (std::abs(signed_area(g.vertices)) == 0.0) throw Error(ErrorCode::DegenerateGraph, "zero-area polygon");

  const Boundary boundary(g.vertices);
  DeploymentPlan plan;
  switch (category) {
    case TaskCategory::Caging: {
      const OffsetCurve curve(boundary, params.caging_offset);
      const double step = curve.total() / n;
      for (int k = 0; k < n; ++k) plan.targets.push_back(curve.at(step * k));
      break;
    }
    case TaskCategory::General: {
      const std::size_t vcount = g.vertices.size();
      std::vector<std::size_t> order(vcount);
      for (std::size_t i = 0; i < vcount; ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return turning_angle(g.vertices, a) > turning_angle(g.vertices, b);
      });
      const std::size_t take = std::min<std::size_t>(vcount, static_cast<std::size_t>(n));
      std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take));
      std::sort(chosen.begin(), chosen.end());
      for (auto i : chosen) plan.targets.push_back(g.vertices[i] + boundary.vertex_normal(i) * params.caging_offset);
      const int extra = n - static_cast<int>(take);
      if (extra > 0) {
        const OffsetCurve curve(boundary, params.caging_offset);
        const double step = curve.total() / extra;
        for (int k = 0; k < extra; ++k) plan.targets.push_back(curve.at(step * (k + 0.5)));
      }
      break;
    }
    case TaskCategory::Infill:
      plan.targets = solve_infill(g, n, params);
      break;
  }
  return plan;
}

DeploymentPlan reassign_min_distance(const DeploymentPlan& plan, const std::vector<Point2>& starts) {
  if (starts.size() != plan.size()) throw Error(ErrorCode::InvariantViolation, "reassign: fleet and plan sizes differ");
  std::vector<std::vector<double>> cost(starts.size(), std::vector<double>(plan.size()));
  for (std::size_t i = 0; i < starts.size(); ++i)
    for (std::size_t j = 0; j < plan.size(); ++j) cost[i][j] = distance(starts[i], plan.targets[j]);
  const auto col = solve_assignment(cost);
  DeploymentPlan out;
  out.targets.reserve(plan.size());
  for (std::size_t i = 0; i < starts.size(); ++i) out.targets.push_back(plan.targets[col[i]]);
  return out;
}

}  // namespace zerocap
