#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zerocap/client.hpp"
#include "zerocap/context.hpp"
#include "zerocap/eval.hpp"
#include "zerocap/pattern.hpp"
#include "zerocap/scene.hpp"
#include "zerocap/segmenter.hpp"
#include "zerocap/shape.hpp"
#include "zerocap/sim.hpp"

namespace zerocap {

enum class SolverKind { Llm, Geometric };

std::string_view to_string(SolverKind s);
std::optional<SolverKind> parse_solver_kind(std::string_view s);

struct PipelineConfig {
  SolverKind solver = SolverKind::Llm;
  DescriptorVariant descriptor = DescriptorVariant::EdgesOnly;
  GateConfig gate;
  double epsilon_px = kDefaultEpsilonPx;
  SolverParams solver_params;
  bool reassign = false;  // permute targets to shorten total travel
  double match_tol = kDefaultMatchTol;
  bool per_index = false;  // compare robot i with truth i instead of matching
  std::optional<double> max_gap;  // caging; default_max_gap(caging_offset) when unset
  double dt = 0.05;
  double arrival_tol = 0.02;
  int max_steps = 10000;
  int seed = 0;  // reserved for jittered solvers

  void validate() const;
};

/// Model services used by one run. `language` may be null for the
/// geometric solver.
struct Backends {
  std::shared_ptr<TextClient> vision;
  std::shared_ptr<TextClient> language;
  std::shared_ptr<SegmentationBackend> segmentation;
};

/// Fixture-backed vision and language clients plus oracle segmentation.
Backends mock_backends(const std::filesystem::path& mock_dir);

enum class RunStatus { Success, Aborted, Fault };

std::string_view to_string(RunStatus s);

struct Judgement {
  std::string judged_by;  // ground_truth | caging_validator | infill_validator | none
  std::optional<Metrics> metrics;
  std::vector<bool> matched;
  std::string diagnostics;
};

struct PipelineRun {
  RunStatus status = RunStatus::Fault;
  std::string stage;  // last stage entered
  std::string message;  // abort message, or "<stage>: <error>" on fault
  std::optional<ContextResult> context;
  std::optional<SegmentationResult> segmentation;
  std::optional<ShapeGraph> graph;
  std::optional<DescriptorText> descriptor;
  std::optional<PatternPrompt> prompt;
  std::optional<DeploymentPlan> plan;
  std::optional<DeployResult> deployment;
  std::optional<Judgement> judgement;
};

/// Context, segmentation, gate, shape, pattern, deploy and eval stages in
/// order. Never throws for stage errors; they end the run as Fault.
PipelineRun run_pipeline(const EnvironmentScene& scene, const PipelineConfig& cfg, Backends& backends);

/// Scores final positions: against ground truth when the scene has it,
/// otherwise with the category validator (none for general tasks).
Judgement judge(const EnvironmentScene& scene, const ShapeGraph& g, const std::vector<Point2>& final_positions,
                const PipelineConfig& cfg);

nlohmann::json result_json(const PipelineRun& run, const EnvironmentScene& scene, const PipelineConfig& cfg);

/// context.json, mask.png, shape.json, descriptor.txt, prompt.txt,
/// plan.json, trajectory.csv, initial.png, final.png and result.json; the
/// ones whose stage never ran are skipped, result.json is always written.
void write_run_artifacts(const PipelineRun& run, const EnvironmentScene& scene, const PipelineConfig& cfg,
                         const std::filesystem::path& out_dir);

}  // namespace zerocap
