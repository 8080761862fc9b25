// zerocap: run the pattern-formation pipeline, evaluate suites, inspect
// shape descriptors and generate synthetic suites.
//
// Exit codes: 0 success, 2 segmentation gate abort, 1 any other fault.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "zerocap/error.hpp"
#include "zerocap/fsutil.hpp"
#include "zerocap/pipeline.hpp"
#include "zerocap/synth.hpp"
#include "zerocap/trials.hpp"

namespace fs = std::filesystem;
using namespace zerocap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFault = 1;
constexpr int kExitAbort = 2;

struct Options {
  std::string scenario;
  std::string suite;
  std::string mask;
  std::string solver = "llm";
  std::string descriptor = "edges";
  double gate_threshold = 0.5;
  int trials = 10;
  std::string out = "out";
  std::string mock_dir;
  std::string llm_endpoint, vlm_endpoint, seg_endpoint;
  std::string llm_model = "default", vlm_model = "default", seg_model = "default";
  double timeout_s = 60.0;
  int max_retries = 2;
  double epsilon = kDefaultEpsilonPx;
  double world_scale = 1.0;
  double match_tol = kDefaultMatchTol;
  bool per_index = false;
  bool reassign = false;
  int seed = 0;
  // synth
  int per_category = 2;
  int image_size = 256;
  double alpha = 1.0;
  bool no_ground_truth = false;
};

PipelineConfig pipeline_config(const Options& o) {
  PipelineConfig cfg;
  const auto solver = parse_solver_kind(o.solver);
  if (!solver) throw Error(ErrorCode::InvariantViolation, "--solver: expected llm|geometric");
  const auto variant = parse_descriptor_variant(o.descriptor);
  if (!variant) throw Error(ErrorCode::InvariantViolation, "--descriptor: expected edges|edges-vertices|binary-matrix");
  cfg.solver = *solver;
  cfg.descriptor = *variant;
  cfg.gate.threshold = o.gate_threshold;
  cfg.epsilon_px = o.epsilon;
  cfg.match_tol = o.match_tol;
  cfg.per_index = o.per_index;
  cfg.reassign = o.reassign;
  cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

EndpointConfig endpoint(const std::string& url, const std::string& model, const char* key_env, const Options& o) {
  EndpointConfig e;
  e.endpoint = url;
  e.model_name = model;
  e.timeout_s = o.timeout_s;
  e.max_retries = o.max_retries;
  e.api_key_env = key_env;
  e.validate();
  return e;
}

Backends make_backends(const Options& o, const PipelineConfig& cfg) {
  std::shared_ptr<FixtureStore> store;
  if (!o.mock_dir.empty()) store = std::make_shared<FixtureStore>(o.mock_dir);
  Backends b;
  if (!o.vlm_endpoint.empty())
    b.vision = std::make_shared<HttpTextClient>(endpoint(o.vlm_endpoint, o.vlm_model, "ZEROCAP_VLM_API_KEY", o));
  else if (store)
    b.vision = std::make_shared<MockVisionClient>(store);
  else
    throw Error(ErrorCode::InvariantViolation, "vision model: set --vlm-endpoint or --mock-dir");

  if (!o.llm_endpoint.empty())
    b.language = std::make_shared<HttpTextClient>(endpoint(o.llm_endpoint, o.llm_model, "ZEROCAP_LLM_API_KEY", o));
  else if (store)
    b.language = std::make_shared<MockLanguageClient>(store);
  else if (cfg.solver == SolverKind::Llm)
    throw Error(ErrorCode::InvariantViolation, "solver llm: set --llm-endpoint or --mock-dir");

  if (!o.seg_endpoint.empty())
    b.segmentation = std::make_shared<HttpSegmentation>(endpoint(o.seg_endpoint, o.seg_model, "ZEROCAP_SEG_API_KEY", o));
  else
    b.segmentation = std::make_shared<OracleSegmentation>();
  return b;
}

int cmd_run(const Options& o) {
  const PipelineConfig cfg = pipeline_config(o);
  const EnvironmentScene scene = load_scenario(o.scenario);
  Backends backends = make_backends(o, cfg);
  const PipelineRun run = run_pipeline(scene, cfg, backends);
  write_run_artifacts(run, scene, cfg, o.out);
  switch (run.status) {
    case RunStatus::Success: {
      std::printf("%s: success", scene.name().c_str());
      if (run.judgement && run.judgement->metrics)
        std::printf(" sr=%d gcr=%.3f (%s)", run.judgement->metrics->sr, run.judgement->metrics->gcr,
                    run.judgement->judged_by.c_str());
      std::printf("\n");
      return kExitOk;
    }
    case RunStatus::Aborted:
      std::fprintf(stderr, "%s\n", run.message.c_str());
      return kExitAbort;
    case RunStatus::Fault:
      std::fprintf(stderr, "error: %s\n", run.message.c_str());
      return kExitFault;
  }
  return kExitFault;
}

int cmd_eval(const Options& o) {
  const PipelineConfig cfg = pipeline_config(o);
  if (o.trials < 1) throw Error(ErrorCode::InvariantViolation, "--trials: must be >= 1");
  const auto paths = list_suite(o.suite);
  Backends backends = make_backends(o, cfg);
  std::vector<TaskReport> tasks;
  for (const auto& p : paths) {
    const EnvironmentScene scene = load_scenario(p);
    tasks.push_back(run_trials(scene, o.trials, cfg, backends));
  }
  const SuiteReport report = assemble_report(std::move(tasks));
  fs::create_directories(o.out);
  write_file_atomic(fs::path(o.out) / "report.json", report_json(report).dump(2) + "\n");
  const std::string table = report_table(report);
  write_file_atomic(fs::path(o.out) / "report.txt", table);
  std::cout << table;
  return kExitOk;
}

int cmd_describe_shape(const Options& o) {
  const auto variant = parse_descriptor_variant(o.descriptor);
  if (!variant) throw Error(ErrorCode::InvariantViolation, "--descriptor: expected edges|edges-vertices|binary-matrix");
  const BinaryMask mask = BinaryMask::from_image(read_png(o.mask));
  const ShapeGraph g = describe_mask(mask, o.epsilon, o.world_scale);
  const DescriptorText text = serialize_descriptor(g, *variant, &mask);
  fs::create_directories(o.out);
  write_file_atomic(fs::path(o.out) / "shape.json", graph_to_json(g).dump(2) + "\n");
  std::cout << text.body;
  if (!text.body.empty() && text.body.back() != '\n') std::cout << '\n';
  return kExitOk;
}

int cmd_synth(const Options& o) {
  SynthOptions s;
  s.per_category = o.per_category;
  s.seed = static_cast<std::uint64_t>(o.seed);
  s.image_size = o.image_size;
  s.alpha = o.alpha;
  s.ground_truth = !o.no_ground_truth;
  s.epsilon_px = o.epsilon;
  const auto paths = synthesize_suite(o.out, s);
  for (const auto& p : paths) std::cout << p.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-shot multi-robot pattern formation pipeline"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI config file (CLI flags take precedence, env vars rank below)");

  Options o;
  app.add_option("--solver", o.solver, "llm | geometric")->envname("ZEROCAP_SOLVER")->capture_default_str();
  app.add_option("--descriptor", o.descriptor, "edges | edges-vertices | binary-matrix")
      ->envname("ZEROCAP_DESCRIPTOR")
      ->capture_default_str();
  app.add_option("--gate-threshold", o.gate_threshold, "segmentation gate t in [0,1]")
      ->envname("ZEROCAP_GATE_THRESHOLD")
      ->capture_default_str();
  app.add_option("--out", o.out, "output directory")->capture_default_str();
  app.add_option("--mock-dir", o.mock_dir, "fixture directory for mock model clients")->envname("ZEROCAP_MOCK_DIR");
  app.add_option("--llm-endpoint", o.llm_endpoint)->envname("ZEROCAP_LLM_ENDPOINT");
  app.add_option("--vlm-endpoint", o.vlm_endpoint)->envname("ZEROCAP_VLM_ENDPOINT");
  app.add_option("--seg-endpoint", o.seg_endpoint)->envname("ZEROCAP_SEG_ENDPOINT");
  app.add_option("--llm-model", o.llm_model)->envname("ZEROCAP_LLM_MODEL");
  app.add_option("--vlm-model", o.vlm_model)->envname("ZEROCAP_VLM_MODEL");
  app.add_option("--seg-model", o.seg_model)->envname("ZEROCAP_SEG_MODEL");
  app.add_option("--timeout", o.timeout_s, "per-request timeout in seconds")->capture_default_str();
  app.add_option("--max-retries", o.max_retries)->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "simplification tolerance in pixels")->capture_default_str();
  app.add_option("--match-tol", o.match_tol, "ground-truth match radius in meters")->capture_default_str();
  app.add_flag("--per-index", o.per_index, "compare robot i with truth point i instead of optimal matching");
  app.add_flag("--reassign", o.reassign, "permute targets to minimise total travel");
  app.add_option("--seed", o.seed)->capture_default_str();

  auto* run = app.add_subcommand("run", "run the pipeline on one scenario");
  run->add_option("--scenario", o.scenario, "scenario JSON")->required();

  auto* eval = app.add_subcommand("eval", "run every scenario in a suite directory");
  eval->add_option("--suite", o.suite, "suite directory")->required();
  eval->add_option("--trials", o.trials)->capture_default_str();

  auto* describe = app.add_subcommand("describe-shape", "print the shape descriptor of a mask");
  describe->add_option("--mask", o.mask, "mask PNG (>127 is foreground)")->required();
  describe->add_option("--world-scale", o.world_scale, "meters per pixel")->capture_default_str();

  auto* synth = app.add_subcommand("synth", "write a synthetic convex-object suite");
  synth->add_option("--per-category", o.per_category)->capture_default_str();
  synth->add_option("--size", o.image_size, "image side in pixels")->capture_default_str();
  synth->add_option("--alpha", o.alpha, "segmentation confidence written to sidecars")->capture_default_str();
  synth->add_flag("--no-ground-truth", o.no_ground_truth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitFault;
  }

  try {
    if (*run) return cmd_run(o);
    if (*eval) return cmd_eval(o);
    if (*describe) return cmd_describe_shape(o);
    if (*synth) return cmd_synth(o);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFault;
  }
  return kExitFault;
}
