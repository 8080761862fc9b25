#include "zerocap/scene.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "zerocap/error.hpp"
#include "zerocap/fsutil.hpp"

namespace zerocap {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(TaskCategory c) {
  switch (c) {
    case TaskCategory::General: return "general";
    case TaskCategory::Infill: return "infill";
    case TaskCategory::Caging: return "caging";
  }
  return "general";
}

std::string_view to_string(ObjectSetup s) {
  switch (s) {
    case ObjectSetup::SingleObject: return "single";
    case ObjectSetup::MultiObject: return "multi";
    case ObjectSetup::HiddenObject: return "hidden";
  }
  return "single";
}

std::optional<TaskCategory> parse_task_category(std::string_view s) {
  if (s == "general") return TaskCategory::General;
  if (s == "infill") return TaskCategory::Infill;
  if (s == "caging") return TaskCategory::Caging;
  return std::nullopt;
}

std::optional<ObjectSetup> parse_object_setup(std::string_view s) {
  if (s == "single") return ObjectSetup::SingleObject;
  if (s == "multi") return ObjectSetup::MultiObject;
  if (s == "hidden") return ObjectSetup::HiddenObject;
  return std::nullopt;
}

std::vector<Point2> RobotFleet::positions() const {
  std::vector<Point2> out;
  out.reserve(robots.size());
  for (const auto& r : robots) out.push_back(r.position);
  return out;
}

Box2 EnvironmentScene::bounds() const {
  return {{-0.5 * world_scale, -0.5 * world_scale},
          {(image.width - 0.5) * world_scale, (image.height - 0.5) * world_scale}};
}

fs::path EnvironmentScene::sidecar(std::string_view suffix) const {
  fs::path p = source_path;
  if (p.extension() == ".json") p.replace_extension();
  p += std::string(suffix);
  return p;
}

std::string EnvironmentScene::name() const {
  return source_path.stem().string();
}

Point2 pixel_to_world(Point2 pixel, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::NonPositiveScale, "scale must be > 0");
  return {pixel.x * scale, pixel.y * scale};
}

Point2 world_to_pixel(Point2 world, double scale) {
  if (!(scale > 0.0)) throw Error(ErrorCode::NonPositiveScale, "scale must be > 0");
  return {world.x / scale, world.y / scale};
}

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

[[noreturn]] void invariant(const std::string& name, const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, name + ": " + what);
}

double number_field(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(where + key, "missing");
  if (!it->is_number()) field_error(where + key, "expected number");
  return it->get<double>();
}

std::string string_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(key, "missing");
  if (!it->is_string()) field_error(key, "expected string");
  return it->get<std::string>();
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      field_error(where + it.key(), "unknown key");
  }
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

}  // namespace

EnvironmentScene parse_scenario(std::string_view text, const fs::path& base_dir, const fs::path& source_path) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }
  if (!doc.is_object()) field_error("<root>", "expected object");
  reject_unknown(doc, {"image", "world_scale", "instruction", "task_category", "object_setup", "robots", "ground_truth"}, "");

  EnvironmentScene scene;
  scene.source_path = source_path;
  scene.image_ref = string_field(doc, "image");
  scene.world_scale = number_field(doc, "world_scale", "");
  scene.instruction = string_field(doc, "instruction");

  const auto category = parse_task_category(string_field(doc, "task_category"));
  if (!category) field_error("task_category", "expected general|infill|caging");
  scene.task_category = *category;
  const auto setup = parse_object_setup(string_field(doc, "object_setup"));
  if (!setup) field_error("object_setup", "expected single|multi|hidden");
  scene.object_setup = *setup;

  auto robots = doc.find("robots");
  if (robots == doc.end()) field_error("robots", "missing");
  if (!robots->is_array()) field_error("robots", "expected array");
  for (std::size_t i = 0; i < robots->size(); ++i) {
    const json& r = (*robots)[i];
    const std::string where = "robots[" + std::to_string(i) + "].";
    if (!r.is_object()) field_error(where, "expected object");
    reject_unknown(r, {"id", "x", "y", "max_speed"}, where);
    if (!r.contains("id") || !r["id"].is_number_integer()) field_error(where + "id", "expected integer");
    RobotState st;
    st.id = r["id"].get<int>();
    st.position = {number_field(r, "x", where), number_field(r, "y", where)};
    st.max_speed = number_field(r, "max_speed", where);
    scene.fleet.robots.push_back(st);
  }

  if (auto gt = doc.find("ground_truth"); gt != doc.end()) {
    if (!gt->is_array()) field_error("ground_truth", "expected array");
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < gt->size(); ++i) {
      const json& p = (*gt)[i];
      const std::string where = "ground_truth[" + std::to_string(i) + "].";
      if (!p.is_object()) field_error(where, "expected object");
      reject_unknown(p, {"x", "y"}, where);
      pts.push_back({number_field(p, "x", where), number_field(p, "y", where)});
    }
    scene.ground_truth = std::move(pts);
  }

  // Invariants, checked before the image is touched so cheap failures win.
  if (!(scene.world_scale > 0.0) || !std::isfinite(scene.world_scale)) invariant("world_scale", "must be a positive finite number");
  if (scene.instruction.empty()) invariant("instruction", "must be non-empty");
  if (scene.fleet.robots.empty()) invariant("robots", "fleet must contain at least one robot");
  std::set<int> ids;
  for (const auto& r : scene.fleet.robots) {
    if (!ids.insert(r.id).second) invariant("robot ids", "duplicate id " + std::to_string(r.id));
    if (!std::isfinite(r.position.x) || !std::isfinite(r.position.y)) invariant("robot position", "non-finite for id " + std::to_string(r.id));
    if (!(r.max_speed > 0.0) || !std::isfinite(r.max_speed)) invariant("max_speed", "must be > 0 for id " + std::to_string(r.id));
  }
  if (*ids.begin() != 0 || *ids.rbegin() != static_cast<int>(ids.size()) - 1)
    invariant("robot ids", "must be dense 0..N-1");
  std::sort(scene.fleet.robots.begin(), scene.fleet.robots.end(),
            [](const RobotState& a, const RobotState& b) { return a.id < b.id; });
  if (scene.ground_truth) {
    if (scene.ground_truth->size() != scene.fleet.size())
      invariant("ground_truth length", std::to_string(scene.ground_truth->size()) + " != fleet size " +
                                           std::to_string(scene.fleet.size()));
    for (const auto& p : *scene.ground_truth)
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) invariant("ground_truth", "non-finite coordinate");
  }

  fs::path image_path = scene.image_ref;
  if (image_path.is_relative()) image_path = base_dir / image_path;
  scene.image = read_png(image_path);
  if (scene.image.width < 8 || scene.image.height < 8) invariant("image size", "must be at least 8x8 pixels");

  const Box2 bounds = scene.bounds();
  for (const auto& r : scene.fleet.robots)
    if (!bounds.contains(r.position)) invariant("robot position", "id " + std::to_string(r.id) + " outside scene bounds");
  return scene;
}

EnvironmentScene load_scenario(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::MissingFile, path.string());
  const std::string text = read_file_text(path);
  return parse_scenario(text, path.parent_path(), path);
}

json scenario_to_json(const EnvironmentScene& scene) {
  json doc;
  doc["image"] = scene.image_ref;
  doc["world_scale"] = scene.world_scale;
  doc["instruction"] = scene.instruction;
  doc["task_category"] = std::string(to_string(scene.task_category));
  doc["object_setup"] = std::string(to_string(scene.object_setup));
  json robots = json::array();
  for (const auto& r : scene.fleet.robots)
    robots.push_back({{"id", r.id}, {"x", r.position.x}, {"y", r.position.y}, {"max_speed", r.max_speed}});
  doc["robots"] = std::move(robots);
  if (scene.ground_truth) {
    json gt = json::array();
    for (const auto& p : *scene.ground_truth) gt.push_back({{"x", p.x}, {"y", p.y}});
    doc["ground_truth"] = std::move(gt);
  }
  return doc;
}

void save_scenario(const EnvironmentScene& scene, const fs::path& path) {
  write_file_atomic(path, scenario_to_json(scene).dump(2) + "\n");
}

void validate_plan(const DeploymentPlan& plan, std::size_t fleet_size, const Box2& bounds) {
  if (plan.size() != fleet_size)
    invariant("plan length", std::to_string(plan.size()) + " targets for " + std::to_string(fleet_size) + " robots");
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const Point2& p = plan.targets[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) invariant("plan coordinates", "non-finite target for robot " + std::to_string(i));
    if (!bounds.contains(p))
      throw Error(ErrorCode::OutOfBounds, "target for robot " + std::to_string(i) + " outside scene bounds");
  }
}

json plan_to_json(const DeploymentPlan& plan) {
  json arr = json::array();
  for (std::size_t i = 0; i < plan.size(); ++i)
    arr.push_back({{"robot_id", static_cast<int>(i)}, {"x", plan.targets[i].x}, {"y", plan.targets[i].y}});
  return arr;
}

DeploymentPlan plan_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "plan: expected array");
  DeploymentPlan plan;
  plan.targets.resize(j.size());
  std::vector<bool> seen(j.size(), false);
  for (const auto& e : j) {
    const int id = e.at("robot_id").get<int>();
    if (id < 0 || static_cast<std::size_t>(id) >= j.size() || seen[id])
      throw Error(ErrorCode::ParseError, "plan: bad robot_id " + std::to_string(id));
    seen[id] = true;
    plan.targets[id] = {e.at("x").get<double>(), e.at("y").get<double>()};
  }
  return plan;
}

}  // namespace zerocap
