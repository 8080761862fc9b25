#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zerocap/pipeline.hpp"

namespace zerocap {

struct TrialResult {
  int sr = 0;
  double gcr = 0.0;
  std::vector<bool> matched;
  DeploymentPlan plan;
  std::string notes;
  bool judged = true;  // false when no criterion applies (general task, no labels)
};

struct TaskReport {
  std::string name;
  TaskCategory category = TaskCategory::General;
  std::string judged_by;
  std::vector<TrialResult> trials;
  std::optional<double> mean_sr;  // over judged trials
  std::optional<double> mean_gcr;
  std::string notes;  // distinct trial notes, "; "-joined
};

struct Aggregate {
  std::size_t tasks = 0;
  std::size_t trials = 0;  // judged trials
  std::optional<double> mean_sr;
  std::optional<double> mean_gcr;
};

struct SuiteReport {
  std::vector<TaskReport> tasks;
  std::map<TaskCategory, Aggregate> categories;
  Aggregate total;
};

/// Runs the full pipeline `trials` times. Aborts and faults count as
/// SR = 0, GCR = 0 trials whose notes carry the message.
TaskReport run_trials(const EnvironmentScene& scene, int trials, const PipelineConfig& cfg, Backends& backends);

/// Category and Total rows as trial-weighted means over judged trials.
SuiteReport assemble_report(std::vector<TaskReport> tasks);

/// Scenario files directly inside `dir`, sorted by name. Sidecar JSON
/// (".seg.json") is skipped. Throws EmptySuite.
std::vector<std::filesystem::path> list_suite(const std::filesystem::path& dir);

nlohmann::json report_json(const SuiteReport& report);
std::string report_table(const SuiteReport& report);

}  // namespace zerocap
