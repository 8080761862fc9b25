#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "zerocap/geometry.hpp"
#include "zerocap/raster.hpp"

namespace zerocap {

enum class TaskCategory { General, Infill, Caging };
enum class ObjectSetup { SingleObject, MultiObject, HiddenObject };

std::string_view to_string(TaskCategory c);
std::string_view to_string(ObjectSetup s);
std::optional<TaskCategory> parse_task_category(std::string_view s);
std::optional<ObjectSetup> parse_object_setup(std::string_view s);

struct RobotState {
  int id = 0;
  Point2 position;  // meters
  double max_speed = 1.0;  // m/s

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

/// Robots sorted by id; ids are dense 0..N-1.
struct RobotFleet {
  std::vector<RobotState> robots;

  std::size_t size() const { return robots.size(); }
  std::vector<Point2> positions() const;

  friend bool operator==(const RobotFleet&, const RobotFleet&) = default;
};

/// One target per robot, index i belongs to robot id i.
struct DeploymentPlan {
  std::vector<Point2> targets;

  std::size_t size() const { return targets.size(); }

  friend bool operator==(const DeploymentPlan&, const DeploymentPlan&) = default;
};

/// A loaded scenario. Immutable after load_scenario returns.
struct EnvironmentScene {
  Image image;
  std::string image_ref;  // path exactly as written in the scenario file
  double world_scale = 0.01;  // meters per pixel
  std::string instruction;
  RobotFleet fleet;
  TaskCategory task_category = TaskCategory::General;
  ObjectSetup object_setup = ObjectSetup::SingleObject;
  std::optional<std::vector<Point2>> ground_truth;
  std::filesystem::path source_path;

  /// World-frame extent of the image, pixel edges included.
  Box2 bounds() const;
  /// Scenario path with ".json" removed; sidecar files hang off this stem.
  std::filesystem::path sidecar(std::string_view suffix) const;
  std::string name() const;
};

/// Pixel centers sit on integer coordinates; origin is the top-left pixel
/// center, x right, y down.
Point2 pixel_to_world(Point2 pixel, double scale);
Point2 world_to_pixel(Point2 world, double scale);

EnvironmentScene load_scenario(const std::filesystem::path& path);
/// Parses scenario JSON text; the image path is resolved against `base_dir`.
EnvironmentScene parse_scenario(std::string_view text, const std::filesystem::path& base_dir,
                                const std::filesystem::path& source_path = {});
nlohmann::json scenario_to_json(const EnvironmentScene& scene);
void save_scenario(const EnvironmentScene& scene, const std::filesystem::path& path);

/// Throws InvariantViolation or OutOfBounds.
void validate_plan(const DeploymentPlan& plan, std::size_t fleet_size, const Box2& bounds);

nlohmann::json plan_to_json(const DeploymentPlan& plan);
DeploymentPlan plan_from_json(const nlohmann::json& j);

}  // namespace zerocap
