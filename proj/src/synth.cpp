#include "zerocap/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zerocap/error.hpp"
#include "zerocap/eval.hpp"
#include "zerocap/fsutil.hpp"
#include "zerocap/pipeline.hpp"

namespace zerocap {

namespace fs = std::filesystem;

std::uint64_t Rng::next() {
  // splitmix64
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

BinaryMask rasterize_polygon(const std::vector<Point2>& polygon, int width, int height) {
  BinaryMask m(width, height);
  const Box2 box = bounding_box(polygon);
  const int x0 = std::max(0, static_cast<int>(std::floor(box.min.x)));
  const int x1 = std::min(width - 1, static_cast<int>(std::ceil(box.max.x)));
  const int y0 = std::max(0, static_cast<int>(std::floor(box.min.y)));
  const int y1 = std::min(height - 1, static_cast<int>(std::ceil(box.max.y)));
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x)
      if (locate_point(polygon, {static_cast<double>(x), static_cast<double>(y)}) == PointLocation::Inside) m.at(x, y) = 1;
  return m;
}

std::vector<Point2> random_convex_polygon(Rng& rng, Point2 center, double radius, int k) {
  if (k < 3) throw Error(ErrorCode::InvariantViolation, "polygon needs k >= 3");
  const double base = 2.0 * std::numbers::pi / k;
  const double min_gap = 0.6 * base;
  // Gaps = min_gap + share of the slack, so they sum to 2pi.
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& v : w) total += (v = rng.uniform(0.1, 1.0));
  const double slack = 2.0 * std::numbers::pi - min_gap * k;
  double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  std::vector<Point2> out;
  for (int i = 0; i < k; ++i) {
    out.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    a += min_gap + slack * w[i] / total;
  }
  return out;
}

namespace {

struct Theme {
  const char* object;
  std::uint8_t r, g, b;
};

constexpr Theme kThemes[] = {
    {"red box", 200, 50, 40}, {"blue mat", 40, 70, 200}, {"yellow crate", 220, 190, 40},
    {"green rug", 40, 160, 70}, {"orange table", 230, 130, 30}, {"purple tile", 140, 60, 170},
};

std::string instruction_for(TaskCategory c, ObjectSetup s, const std::string& obj) {
  if (s == ObjectSetup::HiddenObject) {
    switch (c) {
      case TaskCategory::Caging: return "Something on the floor keeps sliding away. Keep it from moving.";
      case TaskCategory::Infill: return "The spot the delivery was dropped on needs to be covered evenly.";
      case TaskCategory::General: return "Mark the corners of the thing that is out of place.";
    }
  }
  switch (c) {
    case TaskCategory::Caging: return "Surround the " + obj + " so it cannot escape.";
    case TaskCategory::Infill: return "Spread out evenly inside the " + obj + ".";
    case TaskCategory::General: return "Go to the corners of the " + obj + ".";
  }
  return {};
}

std::string pattern_for(TaskCategory c, const std::string& obj) {
  switch (c) {
    case TaskCategory::Caging: return "Form a closed ring around the " + obj + " with no large gaps.";
    case TaskCategory::Infill: return "Fill the inside of the " + obj + " with evenly spaced robots.";
    case TaskCategory::General: return "Place one robot just outside each corner of the " + obj + ".";
  }
  return {};
}

Image paint_scene(const BinaryMask& object, const BinaryMask* distractor, const Theme& t, Rng& rng) {
  Image img(object.width, object.height, 3);
  const int w = object.width, h = object.height;
  const double tilt = rng.uniform(-20.0, 20.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double shade = 150.0 + tilt * (static_cast<double>(x) / w - 0.5) + 10.0 * (static_cast<double>(y) / h);
      const auto g = static_cast<std::uint8_t>(std::clamp(shade + rng.uniform(-6.0, 6.0), 0.0, 255.0));
      std::uint8_t px[3] = {g, g, g};
      if (object.at(x, y)) {
        px[0] = t.r;
        px[1] = t.g;
        px[2] = t.b;
      } else if (distractor && distractor->at(x, y)) {
        px[0] = 90;
        px[1] = 90;
        px[2] = 110;
      }
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = px[c];
    }
  return img;
}

std::vector<Point2> pick_targets(TaskCategory c, const ShapeGraph& g, int& n, const SynthOptions& opts) {
  switch (c) {
    case TaskCategory::General:
      n = static_cast<int>(g.vertices.size());
      return generate_coordinates_geometric(c, g, n, opts.params).targets;
    case TaskCategory::Caging:
      for (n = 4; n <= 64; ++n) {
        auto pts = generate_coordinates_geometric(c, g, n, opts.params).targets;
        if (validate_caging(pts, g, default_max_gap(opts.params.caging_offset)).passed) return pts;
      }
      break;
    case TaskCategory::Infill:
      for (; n >= 1; --n) {
        try {
          auto pts = generate_coordinates_geometric(c, g, n, opts.params).targets;
          if (validate_infill(pts, g, opts.params.min_separation).passed) return pts;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::InfeasibleInfill) throw;
        }
      }
      break;
  }
  throw Error(ErrorCode::InvariantViolation, "synthetic scene has no feasible reference placement");
}

RobotFleet place_fleet(int n, const std::vector<Point2>& polygon_world, const Box2& bounds, Rng& rng) {
  RobotFleet fleet;
  const double keep_out = 0.1, spacing = 0.08, edge = 0.05;
  int attempts = 0;
  while (static_cast<int>(fleet.size()) < n) {
    if (++attempts > 200000) throw Error(ErrorCode::InvariantViolation, "cannot place the synthetic fleet");
    const Point2 p{rng.uniform(bounds.min.x + edge, bounds.max.x - edge), rng.uniform(bounds.min.y + edge, bounds.max.y - edge)};
    if (locate_point(polygon_world, p) != PointLocation::Outside) continue;
    if (distance_to_boundary(polygon_world, p) < keep_out) continue;
    bool clear = true;
    for (const auto& r : fleet.robots) clear = clear && distance(r.position, p) >= spacing;
    if (!clear) continue;
    // Round to the serialization grid used by hand-written scenarios.
    const Point2 q{std::round(p.x * 1000.0) / 1000.0, std::round(p.y * 1000.0) / 1000.0};
    fleet.robots.push_back({static_cast<int>(fleet.size()), q, 0.5});
  }
  return fleet;
}

}  // namespace

std::vector<fs::path> synthesize_suite(const fs::path& out_dir, const SynthOptions& opts) {
  if (opts.per_category < 1) throw Error(ErrorCode::InvariantViolation, "per_category: must be >= 1");
  if (opts.image_size < 64) throw Error(ErrorCode::InvariantViolation, "image_size: must be >= 64");
  if (!(opts.world_scale > 0.0)) throw Error(ErrorCode::NonPositiveScale, "world_scale must be > 0");
  opts.params.validate();
  const fs::path mocks = out_dir / "mocks";
  fs::create_directories(mocks);

  Rng rng(opts.seed);
  std::vector<fs::path> written;
  const int size = opts.image_size;
  const TaskCategory categories[] = {TaskCategory::Caging, TaskCategory::Infill, TaskCategory::General};
  const ObjectSetup setups[] = {ObjectSetup::SingleObject, ObjectSetup::MultiObject, ObjectSetup::HiddenObject};
  int serial = 0;
  for (const TaskCategory cat : categories) {
    for (int i = 0; i < opts.per_category; ++i, ++serial) {
      const Theme& theme = kThemes[serial % std::size(kThemes)];
      const ObjectSetup setup = setups[i % 3];
      const std::string name = std::string(to_string(cat)) + "_" + std::to_string(i);

      const double radius = size * rng.uniform(0.18, 0.26);
      const Point2 center{size * rng.uniform(0.40, 0.60), size * rng.uniform(0.40, 0.60)};
      const auto poly_px = random_convex_polygon(rng, center, radius, rng.integer(3, 6));
      const BinaryMask mask = rasterize_polygon(poly_px, size, size);
      BinaryMask distractor;
      if (setup == ObjectSetup::MultiObject) {
        distractor = BinaryMask(size, size);
        const Point2 dc{center.x < size / 2.0 ? size * 0.88 : size * 0.12, center.y < size / 2.0 ? size * 0.88 : size * 0.12};
        for (int y = 0; y < size; ++y)
          for (int x = 0; x < size; ++x)
            if (std::hypot(x - dc.x, y - dc.y) < size * 0.07) distractor.at(x, y) = 1;
      }
      const Image image = paint_scene(mask, setup == ObjectSetup::MultiObject ? &distractor : nullptr, theme, rng);

      const fs::path scenario_path = out_dir / (name + ".json");
      write_file_atomic(out_dir / (name + ".png"), encode_png(image));
      write_file_atomic(out_dir / (name + ".mask.png"), encode_png(mask.to_image()));
      if (opts.alpha < 1.0)
        write_file_atomic(out_dir / (name + ".seg.json"), nlohmann::json{{"alpha", opts.alpha}}.dump() + "\n");

      const ShapeGraph g = describe_mask(mask, opts.epsilon_px, opts.world_scale);
      int n = cat == TaskCategory::Infill ? rng.integer(3, 8) : 0;
      const auto truth = pick_targets(cat, g, n, opts);

      EnvironmentScene scene;
      scene.image = image;
      scene.image_ref = name + ".png";
      scene.world_scale = opts.world_scale;
      scene.instruction = instruction_for(cat, setup, theme.object);
      scene.task_category = cat;
      scene.object_setup = setup;
      scene.source_path = scenario_path;
      std::vector<Point2> poly_world;
      for (const auto& p : poly_px) poly_world.push_back(p * opts.world_scale);
      scene.fleet = place_fleet(n, poly_world, scene.bounds(), rng);
      if (opts.ground_truth) scene.ground_truth = truth;
      save_scenario(scene, scenario_path);

      const std::string object = theme.object;
      const std::string pi = pattern_for(cat, object);
      nlohmann::json vision = {{"key", vision_fixture_key(scene)}, {"object", object}, {"pattern_instruction", pi}};
      write_file_atomic(mocks / (name + ".vision.json"), vision.dump(2) + "\n");

      // Replay the pipeline up to the prompt for each variant so the
      // language fixtures are keyed by the exact prompt text.
      const EnvironmentScene loaded = load_scenario(scenario_path);
      auto store = std::make_shared<FixtureStore>();
      store->add_vision(vision_fixture_key(loaded), object, pi);
      Backends b;
      b.vision = std::make_shared<MockVisionClient>(store);
      b.segmentation = std::make_shared<OracleSegmentation>();
      for (const DescriptorVariant v :
           {DescriptorVariant::EdgesOnly, DescriptorVariant::EdgesAndVertices, DescriptorVariant::BinaryMatrix}) {
        PipelineConfig cfg;
        cfg.solver = SolverKind::Geometric;
        cfg.descriptor = v;
        cfg.epsilon_px = opts.epsilon_px;
        cfg.solver_params = opts.params;
        cfg.gate.threshold = 0.0;
        const PipelineRun run = run_pipeline(loaded, cfg, b);
        if (!run.prompt) throw Error(ErrorCode::InvariantViolation, "synthetic replay failed: " + run.message);
        nlohmann::json text = {{"key", prompt_fixture_key(run.prompt->body)}, {"text", format_coordinates(truth)}};
        write_file_atomic(mocks / (name + "." + std::string(to_string(v)) + ".llm.json"), text.dump(2) + "\n");
      }
      written.push_back(scenario_path);
    }
  }
  return written;
}

}  // namespace zerocap
