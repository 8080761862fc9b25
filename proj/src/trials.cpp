#include "zerocap/trials.hpp"

#include <algorithm>
#include <cstdio>

#include "zerocap/error.hpp"

namespace zerocap {

TaskReport run_trials(const EnvironmentScene& scene, int trials, const PipelineConfig& cfg, Backends& backends) {
  if (trials < 1) throw Error(ErrorCode::InvariantViolation, "trials: must be >= 1");
  TaskReport report;
  report.name = scene.name();
  report.category = scene.task_category;
  std::vector<std::string> notes;
  for (int k = 0; k < trials; ++k) {
    const PipelineRun run = run_pipeline(scene, cfg, backends);
    TrialResult t;
    if (run.plan) t.plan = *run.plan;
    if (run.status != RunStatus::Success) {
      t.notes = run.message;
    } else if (run.judgement && run.judgement->metrics) {
      t.sr = run.judgement->metrics->sr;
      t.gcr = run.judgement->metrics->gcr;
      t.matched = run.judgement->matched;
      report.judged_by = run.judgement->judged_by;
    } else {
      t.judged = false;
      t.notes = run.judgement ? run.judgement->diagnostics : std::string();
      if (run.judgement) report.judged_by = run.judgement->judged_by;
    }
    if (!t.notes.empty() && std::find(notes.begin(), notes.end(), t.notes) == notes.end()) notes.push_back(t.notes);
    report.trials.push_back(std::move(t));
  }
  if (report.judged_by.empty()) report.judged_by = scene.ground_truth ? "ground_truth" : "none";
  double sr = 0.0, gcr = 0.0;
  std::size_t judged = 0;
  for (const auto& t : report.trials) {
    if (!t.judged) continue;
    sr += t.sr;
    gcr += t.gcr;
    ++judged;
  }
  if (judged > 0) {
    report.mean_sr = sr / static_cast<double>(judged);
    report.mean_gcr = gcr / static_cast<double>(judged);
  }
  for (const auto& n : notes) report.notes += (report.notes.empty() ? "" : "; ") + n;
  return report;
}

namespace {

struct Sums {
  std::size_t tasks = 0, trials = 0;
  double sr = 0.0, gcr = 0.0;

  void add(const TaskReport& t) {
    ++tasks;
    for (const auto& r : t.trials) {
      if (!r.judged) continue;
      ++trials;
      sr += r.sr;
      gcr += r.gcr;
    }
  }
  Aggregate finish() const {
    Aggregate a;
    a.tasks = tasks;
    a.trials = trials;
    if (trials > 0) {
      a.mean_sr = sr / static_cast<double>(trials);
      a.mean_gcr = gcr / static_cast<double>(trials);
    }
    return a;
  }
};

nlohmann::json opt(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string cell(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *v);
  return buf;
}

}  // namespace

SuiteReport assemble_report(std::vector<TaskReport> tasks) {
  SuiteReport r;
  std::map<TaskCategory, Sums> per;
  Sums all;
  for (const auto& t : tasks) {
    per[t.category].add(t);
    all.add(t);
  }
  for (const auto& [c, s] : per) r.categories[c] = s.finish();
  r.total = all.finish();
  r.tasks = std::move(tasks);
  return r;
}

std::vector<std::filesystem::path> list_suite(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(ErrorCode::EmptySuite, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const std::string name = e.path().filename().string();
    if (e.path().extension() != ".json") continue;
    if (name.size() >= 9 && name.ends_with(".seg.json")) continue;
    out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(ErrorCode::EmptySuite, "no scenario files in " + dir.string());
  return out;
}

nlohmann::json report_json(const SuiteReport& report) {
  nlohmann::json j;
  auto tasks = nlohmann::json::array();
  for (const auto& t : report.tasks) {
    auto trials = nlohmann::json::array();
    for (const auto& r : t.trials) {
      nlohmann::json tj;
      tj["sr"] = r.judged ? nlohmann::json(r.sr) : nlohmann::json(nullptr);
      tj["gcr"] = r.judged ? nlohmann::json(r.gcr) : nlohmann::json(nullptr);
      tj["matched"] = r.matched;
      tj["plan"] = plan_to_json(r.plan);
      tj["notes"] = r.notes;
      trials.push_back(std::move(tj));
    }
    tasks.push_back({{"name", t.name},
                     {"category", std::string(to_string(t.category))},
                     {"judged_by", t.judged_by},
                     {"trials", t.trials.size()},
                     {"mean_sr", opt(t.mean_sr)},
                     {"mean_gcr", opt(t.mean_gcr)},
                     {"notes", t.notes},
                     {"runs", std::move(trials)}});
  }
  j["tasks"] = std::move(tasks);
  auto cats = nlohmann::json::object();
  for (const auto& [c, a] : report.categories)
    cats[std::string(to_string(c))] = {
        {"tasks", a.tasks}, {"trials", a.trials}, {"mean_sr", opt(a.mean_sr)}, {"mean_gcr", opt(a.mean_gcr)}};
  j["categories"] = std::move(cats);
  j["total"] = {{"tasks", report.total.tasks},
                {"trials", report.total.trials},
                {"mean_sr", opt(report.total.mean_sr)},
                {"mean_gcr", opt(report.total.mean_gcr)}};
  return j;
}

std::string report_table(const SuiteReport& report) {
  std::size_t w = 5;
  for (const auto& t : report.tasks) w = std::max(w, t.name.size());
  auto row = [&](const std::string& name, const std::string& cat, const std::string& trials, const std::string& sr,
                 const std::string& gcr, const std::string& notes) {
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-*s  %-8s  %6s  %6s  %6s", static_cast<int>(w), name.c_str(), cat.c_str(),
                  trials.c_str(), sr.c_str(), gcr.c_str());
    std::string line = buf;
    if (!notes.empty()) line += "  " + notes;
    while (!line.empty() && line.back() == ' ') line.pop_back();
    return line + "\n";
  };
  std::string out = row("task", "category", "trials", "SR", "GCR", "notes");
  out += std::string(w + 36, '-') + "\n";
  for (const auto& t : report.tasks)
    out += row(t.name, std::string(to_string(t.category)), std::to_string(t.trials.size()), cell(t.mean_sr),
               cell(t.mean_gcr), t.notes);
  out += std::string(w + 36, '-') + "\n";
  for (const auto& [c, a] : report.categories)
    out += row(std::string(to_string(c)), "", std::to_string(a.trials), cell(a.mean_sr), cell(a.mean_gcr), "");
  out += row("Total", "", std::to_string(report.total.trials), cell(report.total.mean_sr), cell(report.total.mean_gcr), "");
  return out;
}

}  // namespace zerocap
