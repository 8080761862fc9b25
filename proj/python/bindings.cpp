#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "zerocap/error.hpp"
#include "zerocap/eval.hpp"
#include "zerocap/pattern.hpp"
#include "zerocap/pipeline.hpp"
#include "zerocap/segmenter.hpp"
#include "zerocap/shape.hpp"
#include "zerocap/synth.hpp"

namespace py = pybind11;
using namespace zerocap;

namespace {

using Points = std::vector<std::pair<double, double>>;

std::vector<Point2> to_points(const Points& pts) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

Points from_points(const std::vector<Point2>& pts) {
  Points out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.emplace_back(p.x, p.y);
  return out;
}

BinaryMask to_mask(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw py::value_error("mask must be a 2-D array");
  BinaryMask m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  const auto view = a.unchecked<2>();
  for (py::ssize_t y = 0; y < a.shape(0); ++y)
    for (py::ssize_t x = 0; x < a.shape(1); ++x) m.at(static_cast<int>(x), static_cast<int>(y)) = view(y, x) ? 1 : 0;
  return m;
}

DescriptorVariant variant_of(const std::string& s) {
  const auto v = parse_descriptor_variant(s);
  if (!v) throw py::value_error("descriptor must be edges, edges-vertices or binary-matrix");
  return *v;
}

TaskCategory category_of(const std::string& s) {
  const auto c = parse_task_category(s);
  if (!c) throw py::value_error("category must be caging, infill or general");
  return *c;
}

ShapeGraph graph_of(const Points& polygon) {
  ShapeGraph g;
  g.vertices = to_points(polygon);
  const int n = static_cast<int>(g.vertices.size());
  for (int i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  g.perimeter = perimeter(g.vertices);
  g.centroid = polygon_centroid(g.vertices);
  g.bounding_box = bounding_box(g.vertices);
  return g;
}

py::dict validation_dict(const ValidationResult& r) {
  py::dict d;
  d["passed"] = r.passed;
  d["per_robot"] = r.per_robot;
  d["diagnostics"] = r.diagnostics;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of the zerocap pattern-formation pipeline";

  // One strong reference for the life of the process.
  static PyObject* error_type = py::exception<Error>(m, "ZerocapError", PyExc_RuntimeError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  m.def(
      "describe_mask_json",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& mask, double epsilon_px,
         double scale) { return graph_to_json(describe_mask(to_mask(mask), epsilon_px, scale)).dump(); },
      py::arg("mask"), py::arg("epsilon_px") = kDefaultEpsilonPx, py::arg("scale") = 1.0);

  m.def(
      "descriptor",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& mask, const std::string& variant,
         double epsilon_px, double scale) {
        const BinaryMask bm = to_mask(mask);
        return serialize_descriptor(describe_mask(bm, epsilon_px, scale), variant_of(variant), &bm).body;
      },
      py::arg("mask"), py::arg("variant") = "edges", py::arg("epsilon_px") = kDefaultEpsilonPx, py::arg("scale") = 1.0);

  m.def(
      "geometric_plan",
      [](const std::string& category, const Points& polygon, int n, double caging_offset, double infill_margin,
         double min_separation) {
        SolverParams p;
        p.caging_offset = caging_offset;
        p.infill_margin = infill_margin;
        p.min_separation = min_separation;
        return from_points(generate_coordinates_geometric(category_of(category), graph_of(polygon), n, p).targets);
      },
      py::arg("category"), py::arg("polygon"), py::arg("n"), py::arg("caging_offset") = SolverParams{}.caging_offset,
      py::arg("infill_margin") = SolverParams{}.infill_margin,
      py::arg("min_separation") = SolverParams{}.min_separation);

  m.def(
      "validate_caging",
      [](const Points& positions, const Points& polygon, double max_gap) {
        return validation_dict(zerocap::validate_caging(to_points(positions), graph_of(polygon), max_gap));
      },
      py::arg("positions"), py::arg("polygon"), py::arg("max_gap") = default_max_gap(SolverParams{}.caging_offset));

  m.def(
      "validate_infill",
      [](const Points& positions, const Points& polygon, double min_sep) {
        return validation_dict(zerocap::validate_infill(to_points(positions), graph_of(polygon), min_sep));
      },
      py::arg("positions"), py::arg("polygon"), py::arg("min_sep") = SolverParams{}.min_separation);

  m.def(
      "match_positions",
      [](const Points& final_positions, const Points& truth, double tol) {
        return zerocap::match_positions(to_points(final_positions), to_points(truth), tol);
      },
      py::arg("final_positions"), py::arg("truth"), py::arg("tol") = kDefaultMatchTol);

  m.def(
      "metrics",
      [](const std::vector<bool>& matched) {
        const Metrics r = compute_metrics(matched);
        return std::make_pair(r.sr, r.gcr);
      },
      py::arg("matched"));

  m.def(
      "gate_passes", [](double alpha, double threshold) {
        SegmentationResult r;
        r.alpha = alpha;
        GateConfig cfg;
        cfg.threshold = threshold;
        return gate(r, cfg).passed;
      },
      py::arg("alpha"), py::arg("threshold") = GateConfig{}.threshold);
  m.attr("INSUFFICIENT_SEGMENTATION") = std::string(kInsufficientSegmentation);

  m.def(
      "synthesize_suite",
      [](const std::filesystem::path& out_dir, int per_category, std::uint64_t seed, double alpha, bool ground_truth) {
        SynthOptions o;
        o.per_category = per_category;
        o.seed = seed;
        o.alpha = alpha;
        o.ground_truth = ground_truth;
        return synthesize_suite(out_dir, o);
      },
      py::arg("out_dir"), py::arg("per_category") = 1, py::arg("seed") = 1, py::arg("alpha") = 1.0,
      py::arg("ground_truth") = true);

  m.def(
      "run_scenario_json",
      [](const std::filesystem::path& scenario, const std::filesystem::path& mock_dir, const std::string& solver,
         const std::string& descriptor, double gate_threshold, const std::optional<std::filesystem::path>& out_dir) {
        PipelineConfig cfg;
        const auto s = parse_solver_kind(solver);
        if (!s) throw py::value_error("solver must be llm or geometric");
        cfg.solver = *s;
        cfg.descriptor = variant_of(descriptor);
        cfg.gate.threshold = gate_threshold;
        const EnvironmentScene scene = load_scenario(scenario);
        Backends backends = mock_backends(mock_dir);
        PipelineRun run;
        {
          py::gil_scoped_release release;
          run = run_pipeline(scene, cfg, backends);
        }
        if (out_dir) write_run_artifacts(run, scene, cfg, *out_dir);
        return result_json(run, scene, cfg).dump();
      },
      py::arg("scenario"), py::arg("mock_dir"), py::arg("solver") = "llm", py::arg("descriptor") = "edges",
      py::arg("gate_threshold") = GateConfig{}.threshold, py::arg("out_dir") = py::none());
}
