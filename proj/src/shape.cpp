#include "zerocap/shape.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <cstdio>
#include <unordered_map>

#include "zerocap/error.hpp"

namespace zerocap {

std::string_view to_string(DescriptorVariant v) {
  switch (v) {
    case DescriptorVariant::EdgesOnly: return "edges";
    case DescriptorVariant::EdgesAndVertices: return "edges-vertices";
    case DescriptorVariant::BinaryMatrix: return "binary-matrix";
  }
  return "edges";
}

std::optional<DescriptorVariant> parse_descriptor_variant(std::string_view s) {
  if (s == "edges") return DescriptorVariant::EdgesOnly;
  if (s == "edges-vertices") return DescriptorVariant::EdgesAndVertices;
  if (s == "binary-matrix") return DescriptorVariant::BinaryMatrix;
  return std::nullopt;
}

namespace {

constexpr std::array<PixelPoint, 4> kFour{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

// Clockwise on screen (y down), starting west.
constexpr std::array<PixelPoint, 8> kMoore{{{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}}};

int moore_index(int dx, int dy) {
  for (int i = 0; i < 8; ++i)
    if (kMoore[i].x == dx && kMoore[i].y == dy) return i;
  return -1;
}

BinaryMask largest_component(const BinaryMask& mask) {
  const int w = mask.width;
  const int h = mask.height;
  std::vector<int> label(mask.bits.size(), -1);
  int best_label = -1;
  std::size_t best_size = 0;
  int next_label = 0;
  std::vector<int> queue;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!mask.bits[idx] || label[idx] >= 0) continue;
      const int id = next_label++;
      std::size_t size = 0;
      queue.assign(1, static_cast<int>(idx));
      label[idx] = id;
      while (!queue.empty()) {
        const int cur = queue.back();
        queue.pop_back();
        ++size;
        const int cx = cur % w;
        const int cy = cur / w;
        for (const auto& d : kFour) {
          const int nx = cx + d.x;
          const int ny = cy + d.y;
          if (!mask.in_bounds(nx, ny)) continue;
          const std::size_t n = static_cast<std::size_t>(ny) * w + nx;
          if (mask.bits[n] && label[n] < 0) {
            label[n] = id;
            queue.push_back(static_cast<int>(n));
          }
        }
      }
      if (size > best_size) {
        best_size = size;
        best_label = id;
      }
    }
  }
  BinaryMask out(w, h);
  for (std::size_t i = 0; i < label.size(); ++i) out.bits[i] = (label[i] == best_label && best_label >= 0) ? 1 : 0;
  return out;
}

void fill_holes(BinaryMask& mask) {
  const int w = mask.width;
  const int h = mask.height;
  std::vector<std::uint8_t> outside(mask.bits.size(), 0);
  std::vector<int> queue;
  auto seed = [&](int x, int y) {
    const std::size_t idx = static_cast<std::size_t>(y) * w + x;
    if (!mask.bits[idx] && !outside[idx]) {
      outside[idx] = 1;
      queue.push_back(static_cast<int>(idx));
    }
  };
  for (int x = 0; x < w; ++x) {
    seed(x, 0);
    seed(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    seed(0, y);
    seed(w - 1, y);
  }
  while (!queue.empty()) {
    const int cur = queue.back();
    queue.pop_back();
    const int cx = cur % w;
    const int cy = cur / w;
    for (const auto& d : kFour) {
      const int nx = cx + d.x;
      const int ny = cy + d.y;
      if (mask.in_bounds(nx, ny)) seed(nx, ny);
    }
  }
  for (std::size_t i = 0; i < mask.bits.size(); ++i)
    if (!outside[i]) mask.bits[i] = 1;
}

// 3x3 median vote applied only at isolated pixels (no 8-neighbor of the
// same value). A full median would shave convex corners.
BinaryMask despeckle(const BinaryMask& mask) {
  BinaryMask out = mask;
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) {
      int votes = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) votes += mask.get(x + dx, y + dy);
      const int self = mask.at(x, y);
      const int same = self ? votes - 1 : 8 - votes;
      if (same <= 0) out.at(x, y) = votes >= 5 ? 1 : 0;
    }
  return out;
}

bool has_2x2_block(const BinaryMask& mask) {
  for (int y = 0; y + 1 < mask.height; ++y)
    for (int x = 0; x + 1 < mask.width; ++x)
      if (mask.at(x, y) && mask.at(x + 1, y) && mask.at(x, y + 1) && mask.at(x + 1, y + 1)) return true;
  return false;
}

long long twice_area(const std::vector<PixelPoint>& loop) {
  long long a = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto& p = loop[i];
    const auto& q = loop[(i + 1) % loop.size()];
    a += static_cast<long long>(p.x) * q.y - static_cast<long long>(q.x) * p.y;
  }
  return a;
}

// Splits a closed walk at repeated pixels and keeps the largest sub-loop.
std::vector<PixelPoint> prune_revisits(std::vector<PixelPoint> loop, int width) {
  // Start pixel on a one-pixel spur: the walk ends by stepping back onto
  // its second pixel.
  if (loop.size() > 3 && loop.back() == loop[1]) {
    const PixelPoint t = loop[0], x = loop[1], pv = loop[loop.size() - 2];
    const long long c = static_cast<long long>(x.x - t.x) * (pv.y - t.y) - static_cast<long long>(x.y - t.y) * (pv.x - t.x);
    if (c != 0) loop.pop_back();
  }
  for (;;) {
    std::unordered_map<long long, std::size_t> first_seen;
    std::size_t i = 0;
    std::size_t j = 0;
    bool found = false;
    for (std::size_t k = 0; k < loop.size(); ++k) {
      const long long key = static_cast<long long>(loop[k].y) * width + loop[k].x;
      auto [it, inserted] = first_seen.emplace(key, k);
      if (!inserted) {
        i = it->second;
        j = k;
        found = true;
        break;
      }
    }
    if (!found) return loop;
    // A one-pixel spur X, T, X: keep the tip and drop the second visit to X
    // unless X would then sit on the segment from T onward.
    if (j == i + 2 && j + 1 < loop.size()) {
      const PixelPoint x = loop[i], t = loop[i + 1], nx = loop[j + 1];
      const long long c = static_cast<long long>(x.x - t.x) * (nx.y - t.y) - static_cast<long long>(x.y - t.y) * (nx.x - t.x);
      if (c != 0 && !(nx == x) && !(nx == t)) {
        loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(j));
        continue;
      }
    }
    std::vector<PixelPoint> a(loop.begin() + static_cast<std::ptrdiff_t>(i), loop.begin() + static_cast<std::ptrdiff_t>(j));
    std::vector<PixelPoint> b(loop.begin() + static_cast<std::ptrdiff_t>(j), loop.end());
    b.insert(b.end(), loop.begin(), loop.begin() + static_cast<std::ptrdiff_t>(i));
    const long long area_a = std::llabs(twice_area(a));
    const long long area_b = std::llabs(twice_area(b));
    if (area_a > area_b || (area_a == area_b && a.size() >= b.size())) loop = std::move(a);
    else loop = std::move(b);
  }
}

}  // namespace

BinaryMask preprocess_mask(const BinaryMask& mask) {
  if (!mask.is_binary()) throw Error(ErrorCode::InvariantViolation, "mask: values must be 0 or 1");
  if (mask.count() == 0) throw Error(ErrorCode::EmptyMask, "mask has no foreground pixels");
  BinaryMask m = largest_component(mask);
  fill_holes(m);
  m = despeckle(m);
  if (m.count() == 0) throw Error(ErrorCode::EmptyMask, "nothing left after despeckle");
  m = largest_component(m);
  fill_holes(m);
  return m;
}

std::vector<PixelPoint> trace_contour(const BinaryMask& mask) {
  PixelPoint start{-1, -1};
  for (int y = 0; y < mask.height && start.x < 0; ++y)
    for (int x = 0; x < mask.width; ++x)
      if (mask.at(x, y)) {
        start = {x, y};
        break;
      }
  if (start.x < 0) throw Error(ErrorCode::EmptyMask, "mask has no foreground pixels");
  if (!has_2x2_block(mask)) throw Error(ErrorCode::DegenerateRegion, "region is one pixel wide everywhere");

  // The raster scan guarantees the west neighbor of `start` is background.
  constexpr int kStartBacktrack = 0;
  std::vector<PixelPoint> walk{start};
  PixelPoint p = start;
  int backtrack = kStartBacktrack;
  const std::size_t cap = 4 * static_cast<std::size_t>(mask.width) * mask.height + 8;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    int found = -1;
    for (int k = 1; k <= 8; ++k) {
      const int dir = (backtrack + k) % 8;
      if (mask.get(p.x + kMoore[dir].x, p.y + kMoore[dir].y)) {
        found = dir;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    const PixelPoint q{p.x + kMoore[found].x, p.y + kMoore[found].y};
    // Leaving the start the same way as the first time closes the walk too;
    // Jacob's test alone can miss when the start is re-entered from another side.
    if (walk.size() > 1 && p == start && q == walk[1]) break;
    const int prev = (found + 7) % 8;
    const PixelPoint b{p.x + kMoore[prev].x, p.y + kMoore[prev].y};
    backtrack = moore_index(b.x - q.x, b.y - q.y);
    p = q;
    // Jacob's criterion: back at the start, entered the same way as at first.
    if (p == start && backtrack == kStartBacktrack) break;
    walk.push_back(p);
  }

  std::vector<PixelPoint> loop = prune_revisits(std::move(walk), mask.width);
  if (loop.size() < 4 || twice_area(loop) == 0)
    throw Error(ErrorCode::DegenerateRegion, "boundary encloses no area");
  if (twice_area(loop) < 0) std::reverse(loop.begin(), loop.end());
  const auto top_left = std::min_element(loop.begin(), loop.end(), [](const PixelPoint& a, const PixelPoint& b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  });
  std::rotate(loop.begin(), top_left, loop.end());
  return loop;
}

namespace {

class Simplifier {
 public:
  Simplifier(std::vector<Point2> pts, double eps) : pts_(std::move(pts)), eps_(eps), keep_(pts_.size(), false) {}

  std::vector<std::size_t> run() {
    const std::size_t m = pts_.size();
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 1; i < m; ++i) {
      const double d = distance(pts_[0], pts_[i]);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    keep_[0] = true;
    keep_[far] = true;
    split(0, far);
    split(far, m);
    std::vector<std::size_t> verts;
    for (std::size_t i = 0; i < m; ++i)
      if (keep_[i]) verts.push_back(i);
    merge(verts);
    // Slide each vertex to the sharpest point of its span, restore the
    // epsilon bound, merge again; repeat until the vertex set settles.
    for (int round = 0; round < 8; ++round) {
      const auto before = verts;
      refine(verts);
      resplit(verts);
      merge(verts);
      merge_pairs(verts);
      if (verts == before) break;
    }
    snap_corners(verts);
    repair(verts);
    return verts;
  }

 private:
  const Point2& at(std::size_t i) const { return pts_[i % pts_.size()]; }

  // Span (a, b) in unwrapped indices; b may exceed m.
  std::pair<std::size_t, double> farthest(std::size_t a, std::size_t b) const {
    std::size_t best = a;
    double best_d = -1.0;
    for (std::size_t i = a + 1; i < b; ++i) {
      const double d = point_segment_distance(at(i), at(a), at(b));
      if (d > best_d) {
        best_d = d;
        best = i;
      }
    }
    return {best, best_d};
  }

  void split(std::size_t a, std::size_t b) {
    std::vector<std::pair<std::size_t, std::size_t>> stack{{a, b}};
    while (!stack.empty()) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      if (hi <= lo + 1) continue;
      auto [idx, d] = farthest(lo, hi);
      if (d > eps_) {
        keep_[idx % pts_.size()] = true;
        stack.push_back({lo, idx});
        stack.push_back({idx, hi});
      }
    }
  }

  std::size_t unwrap(std::size_t from, std::size_t to) const { return to > from ? to : to + pts_.size(); }

  double span_cost(std::size_t prev, std::size_t next) const {
    return farthest(prev, unwrap(prev, next)).second;
  }

  void merge(std::vector<std::size_t>& verts) const {
    for (;;) {
      const std::size_t n = verts.size();
      if (n <= 3) return;
      std::size_t best = n;
      double best_cost = eps_;
      for (std::size_t k = 0; k < n; ++k) {
        const double c = span_cost(verts[(k + n - 1) % n], verts[(k + 1) % n]);
        if (c <= best_cost && (best == n || c < best_cost)) {
          best = k;
          best_cost = c;
        }
      }
      if (best == n) return;
      verts.erase(verts.begin() + static_cast<std::ptrdiff_t>(best));
    }
  }

  // Two adjacent vertices straddling one blunt corner: replace the pair by
  // the sharpest point between their outer neighbors when both new spans
  // stay within epsilon. Cheapest replacement first.
  void merge_pairs(std::vector<std::size_t>& verts) const {
    for (;;) {
      const std::size_t n = verts.size();
      if (n <= 3) return;
      std::size_t best = n, best_idx = 0;
      double best_cost = eps_;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t prev = verts[(k + n - 1) % n];
        const std::size_t next = verts[(k + 2) % n];
        const std::size_t hi = unwrap(prev, next);
        const std::size_t idx = farthest(prev, hi).first;
        const double c = std::max(farthest(prev, idx).second, farthest(idx, hi).second);
        if (c <= best_cost && (best == n || c < best_cost)) {
          best = k;
          best_idx = idx % pts_.size();
          best_cost = c;
        }
      }
      if (best == n) return;
      verts[best] = best_idx;
      verts.erase(verts.begin() + static_cast<std::ptrdiff_t>((best + 1) % n));
      std::sort(verts.begin(), verts.end());
    }
  }

  void refine(std::vector<std::size_t>& verts) const {
    const std::size_t n = verts.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t prev = verts[(k + n - 1) % n];
      const std::size_t next = verts[(k + 1) % n];
      const std::size_t hi = unwrap(prev, next);
      if (hi <= prev + 1) continue;
      verts[k] = farthest(prev, hi).first % pts_.size();
    }
    std::sort(verts.begin(), verts.end());
  }

  // Orthogonal regression line through the middle part of span [a, b],
  // oriented along the contour: (point on line, unit direction).
  std::optional<std::pair<Point2, Point2>> fit_line(std::size_t a, std::size_t b) const {
    const std::size_t len = b - a;
    const std::size_t trim = std::max<std::size_t>(2, len / 6);
    if (len < 2 * trim + 3) return std::nullopt;
    Point2 mean{};
    const std::size_t lo = a + trim, hi = b - trim;
    for (std::size_t i = lo; i <= hi; ++i) mean = mean + at(i);
    mean = mean * (1.0 / static_cast<double>(hi - lo + 1));
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
      const Point2 d = at(i) - mean;
      sxx += d.x * d.x;
      syy += d.y * d.y;
      sxy += d.x * d.y;
    }
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    Point2 dir{std::cos(theta), std::sin(theta)};
    if (dot(dir, at(hi) - at(lo)) < 0) dir = dir * -1.0;
    // Boundary pixel centers sit half a pixel inside the edge on average.
    const Point2 outward{dir.y, -dir.x};
    return std::make_pair(mean + outward * 0.5, dir);
  }

  // Moves each vertex to the contour point nearest the intersection of the
  // lines fitted to its two spans, when the epsilon bound still holds.
  void snap_corners(std::vector<std::size_t>& verts) const {
    const std::size_t n = verts.size();
    const std::size_t m = pts_.size();
    if (n < 3) return;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t prev = verts[(k + n - 1) % n];
      const std::size_t cur = unwrap(prev, verts[k]);
      const std::size_t next = unwrap(verts[k], verts[(k + 1) % n]) + (cur - verts[k]);
      const auto l1 = fit_line(prev, cur);
      const auto l2 = fit_line(cur, next);
      if (!l1 || !l2) continue;
      const double denom = cross(l1->second, l2->second);
      if (std::abs(denom) < 0.05) continue;  // nearly straight, no corner to locate
      const double t = cross(l2->first - l1->first, l2->second) / denom;
      const Point2 corner = l1->first + l1->second * t;
      // Ties (diagonal steps straddling the corner) go to the smaller x,
      // then y, so the choice is stable under rescaling.
      std::size_t best = cur;
      double best_d = distance(at(cur), corner);
      for (std::size_t i = prev + 1; i < next; ++i) {
        const double d = distance(at(i), corner);
        const bool tie = std::abs(d - best_d) <= 1e-9;
        if ((d < best_d && !tie) ||
            (tie && (at(i).x < at(best).x || (at(i).x == at(best).x && at(i).y < at(best).y)))) {
          best_d = d;
          best = i;
        }
      }
      if (best == cur) continue;
      if (farthest(prev, best).second > eps_ || farthest(best, next).second > eps_) continue;
      verts[k] = best % m;
    }
    std::sort(verts.begin(), verts.end());
  }

  void resplit(std::vector<std::size_t>& verts) {
    std::fill(keep_.begin(), keep_.end(), false);
    for (auto v : verts) keep_[v] = true;
    const std::size_t n = verts.size();
    for (std::size_t k = 0; k < n; ++k) split(verts[k], unwrap(verts[k], verts[(k + 1) % n]));
    verts.clear();
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (keep_[i]) verts.push_back(i);
  }

  std::vector<Point2> polygon(const std::vector<std::size_t>& verts) const {
    std::vector<Point2> poly;
    poly.reserve(verts.size());
    for (auto v : verts) poly.push_back(pts_[v]);
    return poly;
  }

  // Refines edges taking part in self-intersections until the polygon is simple.
  void repair(std::vector<std::size_t>& verts) {
    for (std::size_t guard = 0; guard < pts_.size(); ++guard) {
      const auto poly = polygon(verts);
      if (poly.size() >= 3 && is_simple_polygon(poly)) return;
      const std::size_t n = verts.size();
      std::vector<bool> bad(n, false);
      for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = poly[i];
        const Point2 b = poly[(i + 1) % n];
        const Point2 c = poly[(i + 2) % n];
        if (n >= 3 && cross(b - a, c - b) == 0.0 && dot(b - a, c - b) < 0) bad[i] = bad[(i + 1) % n] = true;
        for (std::size_t j = i + 2; j < n; ++j) {
          if (i == 0 && j == n - 1) continue;
          if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) bad[i] = bad[j] = true;
        }
      }
      if (n < 3) std::fill(bad.begin(), bad.end(), true);
      bool inserted = false;
      for (std::size_t e = 0; e < n; ++e) {
        if (!bad[e]) continue;
        const std::size_t a = verts[e];
        const std::size_t b = unwrap(a, verts[(e + 1) % n]);
        if (b <= a + 1) continue;
        const auto idx = farthest(a, b).first;
        keep_[idx % pts_.size()] = true;
        split(a, idx);
        split(idx, b);
        inserted = true;
      }
      if (!inserted) return;
      verts.clear();
      for (std::size_t i = 0; i < pts_.size(); ++i)
        if (keep_[i]) verts.push_back(i);
    }
  }

  std::vector<Point2> pts_;
  double eps_;
  std::vector<bool> keep_;
};

}  // namespace

ShapeGraph simplify_to_graph(const std::vector<PixelPoint>& contour, double epsilon_px, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::NonPositiveScale, "scale must be > 0");
  if (!(epsilon_px >= 0.0)) throw Error(ErrorCode::InvariantViolation, "epsilon: must be >= 0");
  std::vector<PixelPoint> c;
  c.reserve(contour.size());
  for (const auto& p : contour)
    if (c.empty() || !(c.back() == p)) c.push_back(p);
  while (c.size() > 1 && c.front() == c.back()) c.pop_back();
  if (c.size() < 4) throw Error(ErrorCode::CollapsedPolygon, "contour has fewer than 4 distinct points");

  std::vector<Point2> pts;
  pts.reserve(c.size());
  for (const auto& p : c) pts.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
  const std::vector<std::size_t> verts = Simplifier(pts, epsilon_px).run();

  ShapeGraph g;
  for (auto v : verts) {
    g.pixel_vertices.push_back(c[v]);
    g.vertices.push_back({pts[v].x * scale, pts[v].y * scale});
  }
  if (g.vertices.size() < 3 || signed_area(g.vertices) == 0.0 || !is_simple_polygon(g.vertices))
    throw Error(ErrorCode::CollapsedPolygon, "simplified polygon has " + std::to_string(g.vertices.size()) +
                                                 " vertices or is not simple");
  const int n = static_cast<int>(g.vertices.size());
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  g.perimeter = perimeter(g.vertices);
  g.centroid = polygon_centroid(g.vertices);
  g.bounding_box = bounding_box(g.vertices);
  return g;
}

ShapeGraph describe_mask(const BinaryMask& mask, double epsilon_px, double scale) {
  return simplify_to_graph(trace_contour(preprocess_mask(mask)), epsilon_px, scale);
}

std::string graph_structure_problem(const ShapeGraph& g) {
  const std::size_t n = g.vertices.size();
  if (n < 3) return "fewer than 3 vertices";
  if (g.edges.size() != n) return "edge count differs from vertex count";
  std::vector<int> degree(n, 0);
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : g.edges) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n) return "edge index out of range";
    if (a == b) return "self-loop";
    ++degree[a];
    ++degree[b];
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (std::size_t i = 0; i < n; ++i)
    if (degree[i] != 2) return "vertex " + std::to_string(i) + " has degree " + std::to_string(degree[i]);
  // Walk the cycle from vertex 0; it must return after visiting all n vertices.
  std::vector<bool> seen(n, false);
  int prev = -1;
  int cur = 0;
  for (std::size_t steps = 0; steps < n; ++steps) {
    if (seen[cur]) return "cycle closes early";
    seen[cur] = true;
    const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
  }
  if (cur != 0) return "walk does not close";
  for (std::size_t i = 0; i < n; ++i)
    if (g.vertices[i] == g.vertices[(i + 1) % n]) return "consecutive vertices coincide";
  if (!(g.perimeter > 0.0)) return "zero perimeter";
  return {};
}

namespace {

void append_coord(std::string& out, double v) {
  char buf[64];
  double r = std::round(v * 100.0) / 100.0;
  if (r == 0.0) r = 0.0;  // drop negative zero
  std::snprintf(buf, sizeof buf, "%.2f", r);
  out += buf;
}

}  // namespace

BinaryMask resize_nearest(const BinaryMask& mask, int width, int height) {
  BinaryMask out(width, height);
  for (int y = 0; y < height; ++y) {
    const int sy = std::min(mask.height - 1, static_cast<int>((2LL * y + 1) * mask.height / (2LL * height)));
    for (int x = 0; x < width; ++x) {
      const int sx = std::min(mask.width - 1, static_cast<int>((2LL * x + 1) * mask.width / (2LL * width)));
      out.at(x, y) = mask.at(sx, sy);
    }
  }
  return out;
}

DescriptorText serialize_descriptor(const ShapeGraph& g, DescriptorVariant variant, const BinaryMask* mask) {
  DescriptorText d;
  d.variant = variant;
  if (variant == DescriptorVariant::BinaryMatrix) {
    if (mask == nullptr) throw Error(ErrorCode::MissingMask, "binary-matrix descriptor needs the mask");
    const BinaryMask small = resize_nearest(*mask, kBinaryMatrixSize, kBinaryMatrixSize);
    d.body.reserve(static_cast<std::size_t>(kBinaryMatrixSize) * (kBinaryMatrixSize + 1));
    for (int y = 0; y < kBinaryMatrixSize; ++y) {
      for (int x = 0; x < kBinaryMatrixSize; ++x) d.body.push_back(small.at(x, y) ? '1' : '0');
      d.body.push_back('\n');
    }
  } else {
    if (!graph_structure_problem(g).empty()) throw Error(ErrorCode::DegenerateGraph, graph_structure_problem(g));
    if (variant == DescriptorVariant::EdgesAndVertices) {
      d.body += "V:";
      for (std::size_t i = 0; i < g.vertices.size(); ++i) d.body += " v" + std::to_string(i);
      d.body += '\n';
    }
    for (const auto& [a, b] : g.edges) {
      d.body += '(';
      append_coord(d.body, g.vertices[a].x);
      d.body += ',';
      append_coord(d.body, g.vertices[a].y);
      d.body += ")-(";
      append_coord(d.body, g.vertices[b].x);
      d.body += ',';
      append_coord(d.body, g.vertices[b].y);
      d.body += ")\n";
    }
  }
  d.char_count = d.body.size();
  return d;
}

nlohmann::json graph_to_json(const ShapeGraph& g) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : g.vertices) verts.push_back({{"x", v.x}, {"y", v.y}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({a, b});
  return {{"vertices", verts}, {"edges", edges}};
}

}  // namespace zerocap
