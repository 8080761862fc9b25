#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "zerocap/fsutil.hpp"

namespace zerocap::testing {

std::optional<ErrorCode> error_code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

namespace {

void fill_rect(BinaryMask& m, int x0, int y0, int x1, int y1, std::uint8_t v) {
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) m.at(x, y) = v;
}

double min_angle_deg(const std::vector<Point2>& t) {
  double best = 180.0;
  for (int i = 0; i < 3; ++i) {
    const Point2 a = t[i], b = t[(i + 1) % 3], c = t[(i + 2) % 3];
    const Point2 u = b - a, v = c - a;
    best = std::min(best, std::acos(std::clamp(dot(u, v) / (norm(u) * norm(v)), -1.0, 1.0)) * 180.0 / std::numbers::pi);
  }
  return best;
}

}  // namespace

std::vector<CorpusShape> polygon_corpus(int size, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CorpusShape> out;
  const int margin = 24;

  for (int i = 0; i < 12; ++i) {
    const int w = rng.integer(40, 300), h = rng.integer(40, 300);
    const int x0 = rng.integer(margin, size - margin - w), y0 = rng.integer(margin, size - margin - h);
    const int x1 = x0 + w - 1, y1 = y0 + h - 1;
    CorpusShape s{"rectangle", {}, BinaryMask(size, size)};
    fill_rect(s.mask, x0, y0, x1, y1, 1);
    s.corners = {{double(x0), double(y0)}, {double(x1), double(y0)}, {double(x1), double(y1)}, {double(x0), double(y1)}};
    out.push_back(std::move(s));
  }

  for (int i = 0; i < 12; ++i) {
    const int w = rng.integer(90, 320), h = rng.integer(90, 320);
    const int x0 = rng.integer(margin, size - margin - w), y0 = rng.integer(margin, size - margin - h);
    const int x1 = x0 + w - 1, y1 = y0 + h - 1;
    const int cw = static_cast<int>(w * rng.uniform(0.3, 0.7)), ch = static_cast<int>(h * rng.uniform(0.3, 0.7));
    CorpusShape s{"l-shape", {}, BinaryMask(size, size)};
    fill_rect(s.mask, x0, y0, x1, y1, 1);
    // Remove the top-right block [xc, x1] x [y0, yc].
    const int xc = x1 - cw + 1, yc = y0 + ch - 1;
    fill_rect(s.mask, xc, y0, x1, yc, 0);
    s.corners = {{double(x0), double(y0)},     {double(xc - 1), double(y0)}, {double(xc - 1), double(yc + 1)},
                 {double(x1), double(yc + 1)}, {double(x1), double(y1)},     {double(x0), double(y1)}};
    // Rotate the construction by a random multiple of 90 degrees about the image center.
    const int turns = rng.integer(0, 3);
    for (int t = 0; t < turns; ++t) {
      BinaryMask r(size, size);
      for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) r.at(size - 1 - y, x) = s.mask.at(x, y);
      s.mask = r;
      for (auto& c : s.corners) c = {size - 1 - c.y, c.x};
    }
    out.push_back(std::move(s));
  }

  for (int i = 0; i < 13; ++i) {
    std::vector<Point2> tri;
    do {
      const Point2 c{rng.uniform(200.0, size - 200.0), rng.uniform(200.0, size - 200.0)};
      const double r = rng.uniform(90.0, 180.0);
      tri.clear();
      for (int k = 0; k < 3; ++k) {
        const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
        tri.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
      }
      if (signed_area(tri) < 0) std::swap(tri[1], tri[2]);
    } while (min_angle_deg(tri) < 40.0);
    out.push_back({"triangle", tri, rasterize_polygon(tri, size, size)});
  }

  for (int i = 0; i < 13; ++i) {
    const int k = 3 + i % 6;
    const Point2 c{rng.uniform(220.0, size - 220.0), rng.uniform(220.0, size - 220.0)};
    const double r = rng.uniform(70.0, 200.0);
    const double rot = rng.uniform(0.0, 2.0 * std::numbers::pi);
    std::vector<Point2> poly;
    for (int j = 0; j < k; ++j) {
      const double a = rot + 2.0 * std::numbers::pi * j / k;
      poly.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
    }
    out.push_back({"k-gon", poly, rasterize_polygon(poly, size, size)});
  }
  return out;
}

BinaryMask random_blob(Rng& rng, int size) {
  BinaryMask m(size, size);
  const Point2 c{size * rng.uniform(0.35, 0.65), size * rng.uniform(0.35, 0.65)};
  if (rng.uniform() < 0.5) {
    const int parts = rng.integer(1, 5);
    for (int p = 0; p < parts; ++p) {
      const Point2 o{c.x + size * rng.uniform(-0.15, 0.15), c.y + size * rng.uniform(-0.15, 0.15)};
      const double a = size * rng.uniform(0.04, 0.2), b = size * rng.uniform(0.04, 0.2);
      const double th = rng.uniform(0.0, std::numbers::pi);
      const double ct = std::cos(th), st = std::sin(th);
      for (int y = 0; y < size; ++y)
        for (int x = 0; x < size; ++x) {
          const double dx = x - o.x, dy = y - o.y;
          const double u = (dx * ct + dy * st) / a, v = (-dx * st + dy * ct) / b;
          if (u * u + v * v <= 1.0) m.at(x, y) = 1;
        }
    }
  } else {
    const double r0 = size * rng.uniform(0.12, 0.3);
    double amp[6] = {0}, phase[6] = {0};
    double budget = 0.5;
    for (int k = 2; k < 6; ++k) {
      amp[k] = rng.uniform(0.0, budget / 2.0);
      budget -= amp[k];
      phase[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x) {
        const double dx = x - c.x, dy = y - c.y;
        const double th = std::atan2(dy, dx);
        double r = 1.0;
        for (int k = 2; k < 6; ++k) r += amp[k] * std::cos(k * th + phase[k]);
        if (std::hypot(dx, dy) <= r0 * r) m.at(x, y) = 1;
      }
  }
  return m;
}

int winding_number(const std::vector<Point2>& poly, Point2 p) {
  int wn = 0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n];
    const double side = cross(b - a, p - a);
    if (a.y <= p.y) {
      if (b.y > p.y && side > 0) ++wn;
    } else if (b.y <= p.y && side < 0) {
      --wn;
    }
  }
  return wn;
}

std::vector<bool> brute_force_match(const std::vector<Point2>& final_positions, const std::vector<Point2>& truth,
                                    double tol) {
  const std::size_t n = final_positions.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::size_t best_count = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best = perm;
  do {
    std::size_t count = 0;
    double cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = distance(final_positions[i], truth[perm[i]]);
      if (d <= tol) {
        ++count;
        cost += d;
      }
    }
    if (count > best_count || (count == best_count && cost < best_cost)) {
      best_count = count;
      best_cost = cost;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<bool> matched(n);
  for (std::size_t i = 0; i < n; ++i) matched[i] = distance(final_positions[i], truth[best[i]]) <= tol;
  return matched;
}

ShapeGraph graph_from_polygon(const std::vector<Point2>& vertices) {
  ShapeGraph g;
  g.vertices = vertices;
  const int n = static_cast<int>(vertices.size());
  for (int i = 0; i < n; ++i) {
    g.edges.emplace_back(i, (i + 1) % n);
    g.pixel_vertices.push_back({static_cast<int>(std::lround(vertices[i].x)), static_cast<int>(std::lround(vertices[i].y))});
  }
  g.perimeter = perimeter(vertices);
  g.centroid = polygon_centroid(vertices);
  g.bounding_box = bounding_box(vertices);
  return g;
}

std::vector<Point2> random_convex(Rng& rng, Point2 center, double r_lo, double r_hi, int k_lo, int k_hi) {
  return random_convex_polygon(rng, center, rng.uniform(r_lo, r_hi), rng.integer(k_lo, k_hi));
}

TempDir::TempDir(const std::string& tag) {
  std::random_device rd;
  const auto base = std::filesystem::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    path_ = base / (tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    if (std::filesystem::create_directories(path_)) return;
  }
  throw Error(ErrorCode::Io, "cannot create temp dir");
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::filesystem::path write_minimal_scenario(const std::filesystem::path& dir, const std::string& stem, int robots,
                                             int size, const std::string& category) {
  write_png(dir / (stem + ".png"), Image(size, size, 1, 40));
  nlohmann::json doc;
  doc["image"] = stem + ".png";
  doc["world_scale"] = 0.01;
  doc["instruction"] = "Surround the box.";
  doc["task_category"] = category;
  doc["object_setup"] = "single";
  doc["robots"] = nlohmann::json::array();
  for (int i = 0; i < robots; ++i) doc["robots"].push_back({{"id", i}, {"x", 0.01 * i}, {"y", 0.0}, {"max_speed", 0.5}});
  const auto path = dir / (stem + ".json");
  write_file_atomic(path, doc.dump(2));
  return path;
}

BinaryMask rect_mask(int w, int h, int x0, int y0, int x1, int y1) {
  BinaryMask m(w, h);
  fill_rect(m, x0, y0, x1, y1, 1);
  return m;
}

}  // namespace zerocap::testing
