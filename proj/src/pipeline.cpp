#include "zerocap/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "zerocap/error.hpp"
#include "zerocap/fsutil.hpp"
#include "zerocap/render.hpp"

namespace zerocap {

std::string_view to_string(SolverKind s) { return s == SolverKind::Llm ? "llm" : "geometric"; }

std::optional<SolverKind> parse_solver_kind(std::string_view s) {
  if (s == "llm") return SolverKind::Llm;
  if (s == "geometric") return SolverKind::Geometric;
  return std::nullopt;
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Success: return "success";
    case RunStatus::Aborted: return "aborted";
    case RunStatus::Fault: return "fault";
  }
  return "fault";
}

void PipelineConfig::validate() const {
  gate.validate();
  solver_params.validate();
  if (!(epsilon_px > 0.0)) throw Error(ErrorCode::InvariantViolation, "epsilon: must be > 0");
  if (!(match_tol > 0.0)) throw Error(ErrorCode::InvariantViolation, "match_tol: must be > 0");
  if (max_gap && !(*max_gap > 0.0)) throw Error(ErrorCode::InvariantViolation, "max_gap: must be > 0");
  if (!(dt > 0.0) || !(arrival_tol > 0.0) || max_steps < 0)
    throw Error(ErrorCode::InvariantViolation, "simulator settings out of range");
}

Backends mock_backends(const std::filesystem::path& mock_dir) {
  auto store = std::make_shared<const FixtureStore>(mock_dir);
  Backends b;
  b.vision = std::make_shared<MockVisionClient>(store);
  b.language = std::make_shared<MockLanguageClient>(store);
  b.segmentation = std::make_shared<OracleSegmentation>();
  return b;
}

Judgement judge(const EnvironmentScene& scene, const ShapeGraph& g, const std::vector<Point2>& final_positions,
                const PipelineConfig& cfg) {
  Judgement j;
  if (scene.ground_truth) {
    j.judged_by = "ground_truth";
    j.matched = cfg.per_index ? match_by_index(final_positions, *scene.ground_truth, cfg.match_tol)
                              : match_positions(final_positions, *scene.ground_truth, cfg.match_tol);
    j.metrics = compute_metrics(j.matched);
    const auto hits = std::count(j.matched.begin(), j.matched.end(), true);
    j.diagnostics = std::to_string(hits) + "/" + std::to_string(j.matched.size()) + " matched";
    return j;
  }
  ValidationResult v;
  switch (scene.task_category) {
    case TaskCategory::Caging:
      j.judged_by = "caging_validator";
      v = validate_caging(final_positions, g, cfg.max_gap.value_or(default_max_gap(cfg.solver_params.caging_offset)));
      break;
    case TaskCategory::Infill:
      j.judged_by = "infill_validator";
      v = validate_infill(final_positions, g, cfg.solver_params.min_separation);
      break;
    case TaskCategory::General:
      j.judged_by = "none";
      j.diagnostics = "general task without ground truth";
      return j;
  }
  j.matched = v.per_robot;
  j.metrics = compute_metrics(j.matched);
  j.diagnostics = v.diagnostics;
  return j;
}

PipelineRun run_pipeline(const EnvironmentScene& scene, const PipelineConfig& cfg, Backends& backends) {
  PipelineRun run;
  try {
    run.stage = "config";
    cfg.validate();
    if (!backends.vision || !backends.segmentation)
      throw Error(ErrorCode::InvariantViolation, "vision and segmentation backends are required");
    if (cfg.solver == SolverKind::Llm && !backends.language)
      throw Error(ErrorCode::InvariantViolation, "solver llm requires a language client");

    run.stage = "context";
    run.context = identify_context(scene, *backends.vision);

    run.stage = "segmentation";
    run.segmentation = segment(run.context->object_label, scene, *backends.segmentation);

    run.stage = "gate";
    const GateOutcome outcome = gate(*run.segmentation, cfg.gate);
    if (!outcome.passed) {
      run.status = RunStatus::Aborted;
      run.message = outcome.message;
      return run;
    }

    run.stage = "shape";
    const BinaryMask& mask = run.segmentation->mask;
    run.graph = describe_mask(mask, cfg.epsilon_px, scene.world_scale);
    run.descriptor = serialize_descriptor(*run.graph, cfg.descriptor, &mask);

    run.stage = "pattern";
    const int n = static_cast<int>(scene.fleet.size());
    run.prompt = build_prompt(run.context->pattern_instruction, *run.descriptor, n, PromptFrame{scene.bounds()});
    DeploymentPlan plan = cfg.solver == SolverKind::Llm
                              ? generate_coordinates_llm(*run.prompt, *backends.language, scene.bounds())
                              : generate_coordinates_geometric(scene.task_category, *run.graph, n, cfg.solver_params);
    if (cfg.reassign) plan = reassign_min_distance(plan, scene.fleet.positions());
    validate_plan(plan, scene.fleet.size(), scene.bounds());
    run.plan = plan;

    run.stage = "deploy";
    SimWorld world;
    world.fleet = scene.fleet;
    world.bounds = scene.bounds();
    world.dt = cfg.dt;
    world.arrival_tol = cfg.arrival_tol;
    world.max_steps = cfg.max_steps;
    run.deployment = deploy(world, *run.plan);

    run.stage = "eval";
    run.judgement = judge(scene, *run.graph, run.deployment->final_fleet.positions(), cfg);
    run.status = RunStatus::Success;
  } catch (const std::exception& e) {
    run.status = RunStatus::Fault;
    run.message = run.stage + ": " + e.what();
  }
  return run;
}

namespace {

nlohmann::json points_json(const std::vector<Point2>& pts) {
  auto arr = nlohmann::json::array();
  for (const auto& p : pts) arr.push_back({{"x", p.x}, {"y", p.y}});
  return arr;
}

}  // namespace

nlohmann::json result_json(const PipelineRun& run, const EnvironmentScene& scene, const PipelineConfig& cfg) {
  nlohmann::json j;
  j["scenario"] = scene.name();
  j["task_category"] = std::string(to_string(scene.task_category));
  j["object_setup"] = std::string(to_string(scene.object_setup));
  j["status"] = std::string(to_string(run.status));
  j["stage"] = run.stage;
  j["message"] = run.message;
  j["solver"] = std::string(to_string(cfg.solver));
  j["descriptor"] = std::string(to_string(cfg.descriptor));
  j["gate_threshold"] = cfg.gate.threshold;
  j["robot_count"] = scene.fleet.size();
  j["object"] = run.context ? nlohmann::json(run.context->object_label) : nlohmann::json(nullptr);
  j["pattern_instruction"] = run.context ? nlohmann::json(run.context->pattern_instruction) : nlohmann::json(nullptr);
  j["alpha"] = run.segmentation ? nlohmann::json(run.segmentation->alpha) : nlohmann::json(nullptr);
  j["estimated_tokens"] = run.prompt ? nlohmann::json(run.prompt->estimated_tokens) : nlohmann::json(nullptr);
  j["steps"] = run.deployment ? nlohmann::json(run.deployment->steps) : nlohmann::json(nullptr);
  j["final_positions"] = run.deployment ? points_json(run.deployment->final_fleet.positions()) : nlohmann::json(nullptr);
  if (run.judgement && run.judgement->metrics) {
    j["judged_by"] = run.judgement->judged_by;
    j["sr"] = run.judgement->metrics->sr;
    j["gcr"] = run.judgement->metrics->gcr;
    j["matched"] = run.judgement->matched;
    j["diagnostics"] = run.judgement->diagnostics;
  } else {
    j["judged_by"] = run.judgement ? run.judgement->judged_by : std::string("none");
    j["sr"] = nullptr;
    j["gcr"] = nullptr;
    j["matched"] = nullptr;
    j["diagnostics"] = run.judgement ? run.judgement->diagnostics : std::string();
  }
  return j;
}

void write_run_artifacts(const PipelineRun& run, const EnvironmentScene& scene, const PipelineConfig& cfg,
                         const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  auto dump = [](const nlohmann::json& j) { return j.dump(2) + "\n"; };

  if (run.context) {
    const nlohmann::json c = {{"object", run.context->object_label},
                              {"pattern_instruction", run.context->pattern_instruction}};
    write_file_atomic(out_dir / "context.json", dump(c));
  }
  if (run.segmentation) write_file_atomic(out_dir / "mask.png", encode_png(run.segmentation->mask.to_image()));
  if (run.graph) write_file_atomic(out_dir / "shape.json", dump(graph_to_json(*run.graph)));
  if (run.descriptor) write_file_atomic(out_dir / "descriptor.txt", run.descriptor->body);
  if (run.prompt) write_file_atomic(out_dir / "prompt.txt", run.prompt->body);
  if (run.plan) write_file_atomic(out_dir / "plan.json", dump(plan_to_json(*run.plan)));
  const ShapeGraph* g = run.graph ? &*run.graph : nullptr;
  write_file_atomic(out_dir / "initial.png",
                    encode_png(render_frame(scene, g, scene.fleet.positions(), kInitialMarker)));
  if (run.deployment) {
    write_file_atomic(out_dir / "trajectory.csv", trajectory_csv(run.deployment->trajectory));
    write_file_atomic(out_dir / "final.png",
                      encode_png(render_frame(scene, g, run.deployment->final_fleet.positions(), kFinalMarker)));
  }
  write_file_atomic(out_dir / "result.json", dump(result_json(run, scene, cfg)));
}

}  // namespace zerocap
