#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "zerocap/geometry.hpp"
#include "zerocap/pattern.hpp"
#include "zerocap/raster.hpp"

namespace zerocap {

/// Small deterministic generator; identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi);  // inclusive

 private:
  std::uint64_t state_;
};

/// Pixel (x, y) is set iff its center lies strictly inside `polygon`
/// (pixel coordinates).
BinaryMask rasterize_polygon(const std::vector<Point2>& polygon, int width, int height);

/// k vertices on a circle with angular gaps of at least 0.6 * 2pi/k, in
/// ascending angle order (positive area in image coordinates).
std::vector<Point2> random_convex_polygon(Rng& rng, Point2 center, double radius, int k);

struct SynthOptions {
  int per_category = 2;
  std::uint64_t seed = 1;
  int image_size = 256;
  double world_scale = 0.01;
  double alpha = 1.0;  // written to a .seg.json sidecar when below 1
  bool ground_truth = true;
  double epsilon_px = 2.0;
  SolverParams params;
};

/// Writes a synthetic convex-object suite: per scenario the scene PNG,
/// mask PNG, scenario JSON and, under mocks/, a vision fixture plus one
/// language fixture per descriptor variant whose reply is the geometric
/// reference plan. Returns the scenario paths.
std::vector<std::filesystem::path> synthesize_suite(const std::filesystem::path& out_dir, const SynthOptions& opts);

}  // namespace zerocap
