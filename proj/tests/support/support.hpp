#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zerocap/error.hpp"
#include "zerocap/geometry.hpp"
#include "zerocap/raster.hpp"
#include "zerocap/scene.hpp"
#include "zerocap/shape.hpp"
#include "zerocap/synth.hpp"

namespace zerocap::testing {

/// Code of the zerocap::Error thrown by f, or nullopt when f returns.
std::optional<ErrorCode> error_code_of(const std::function<void()>& f);

struct CorpusShape {
  std::string kind;  // rectangle | l-shape | triangle | k-gon
  std::vector<Point2> corners;  // constructed corners, pixel coordinates
  BinaryMask mask;
};

/// 50 polygon masks (rectangles, L-shapes, triangles, regular k-gons with
/// k <= 8) at size x size, fixed seed.
std::vector<CorpusShape> polygon_corpus(int size = 512, std::uint64_t seed = 7);

/// Union of discs and ellipses, or a smooth star-shaped region.
BinaryMask random_blob(Rng& rng, int size);

/// Winding number of the closed polygon around p (nonzero = inside).
int winding_number(const std::vector<Point2>& poly, Point2 p);

/// Best (matched count, then summed distance) over all n! assignments.
std::vector<bool> brute_force_match(const std::vector<Point2>& final_positions, const std::vector<Point2>& truth,
                                    double tol);

/// ShapeGraph over world-frame vertices (positive orientation expected).
ShapeGraph graph_from_polygon(const std::vector<Point2>& vertices);

/// Random convex polygon in world coordinates, radius in [r_lo, r_hi].
std::vector<Point2> random_convex(Rng& rng, Point2 center, double r_lo, double r_hi, int k_lo = 3, int k_hi = 8);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "zerocap");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Scenario JSON with a gray size x size image written as "<stem>.png".
/// Robots sit along the top edge.
std::filesystem::path write_minimal_scenario(const std::filesystem::path& dir, const std::string& stem, int robots = 1,
                                             int size = 64, const std::string& category = "general");

/// Square mask with the given pixel rectangle set (inclusive bounds).
BinaryMask rect_mask(int w, int h, int x0, int y0, int x1, int y1);

}  // namespace zerocap::testing
