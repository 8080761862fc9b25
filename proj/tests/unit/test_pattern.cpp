#include <doctest.h>

#include "support.hpp"
#include "zerocap/eval.hpp"
#include "zerocap/pattern.hpp"

using namespace zerocap;
using testing::error_code_of;

namespace {

class ScriptedClient final : public TextClient {
 public:
  explicit ScriptedClient(std::vector<std::string> replies) : replies_(std::move(replies)) {}
  std::string complete(const CompletionRequest& request) override {
    prompts.push_back(request.prompt);
    const std::size_t i = std::min(prompts.size() - 1, replies_.size() - 1);
    return replies_[i];
  }
  std::vector<std::string> prompts;

 private:
  std::vector<std::string> replies_;
};

const std::vector<Point2> kUnitSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

PatternPrompt prompt_for(int n) {
  const ShapeGraph g = testing::graph_from_polygon(kUnitSquare);
  return build_prompt("cage the box", serialize_descriptor(g, DescriptorVariant::EdgesOnly), n);
}

const Box2 kBounds{{-1, -1}, {10, 10}};

}  // namespace

TEST_CASE("build_prompt contains the instruction, descriptor and count") {
  const ShapeGraph g = testing::graph_from_polygon(kUnitSquare);
  const DescriptorText d = serialize_descriptor(g, DescriptorVariant::EdgesOnly);
  const PatternPrompt p = build_prompt("cage the box", d, 4, PromptFrame{{{0, 0}, {2, 2}}});
  CHECK(p.body.find("cage the box") != std::string::npos);
  CHECK(p.body.find(d.body) != std::string::npos);
  CHECK(p.body.find("4") != std::string::npos);
  CHECK(p.body.find("exactly 4 lines 'x,y'") != std::string::npos);
  CHECK(p.body.find("x from 0.00 to 2.00") != std::string::npos);
  CHECK(p.robot_count == 4);
  CHECK(p.descriptor_variant == DescriptorVariant::EdgesOnly);
  CHECK(p.estimated_tokens == (p.body.size() + 3) / 4);
  CHECK(error_code_of([&] { build_prompt("x", d, 0); }) == ErrorCode::InvariantViolation);
}

TEST_CASE("estimated_tokens is ceil(bytes / 4)") {
  DescriptorText d;
  for (int extra = 0; extra < 8; ++extra) {
    d.body = std::string(static_cast<std::size_t>(extra), 'a') + "\n";
    const PatternPrompt p = build_prompt("pi", d, 1);
    CHECK(p.estimated_tokens == static_cast<std::size_t>(std::ceil(p.body.size() / 4.0)));
  }
}

TEST_CASE("binary-matrix prompts cost more tokens than edge prompts") {
  const BinaryMask m = testing::rect_mask(128, 128, 30, 40, 90, 100);
  const ShapeGraph g = describe_mask(m, 2.0, 0.01);
  const auto edges = build_prompt("fill", serialize_descriptor(g, DescriptorVariant::EdgesOnly), 5);
  const auto matrix = build_prompt("fill", serialize_descriptor(g, DescriptorVariant::BinaryMatrix, &m), 5);
  CHECK(matrix.estimated_tokens > edges.estimated_tokens);
}

TEST_CASE("parse_coordinates formats") {
  CHECK(parse_coordinates("[(2,3),(4,5)]", 2) == std::vector<Point2>{{2, 3}, {4, 5}});
  CHECK(parse_coordinates("1.5,2\n-3,4e-1\n", 2) == std::vector<Point2>{{1.5, 2}, {-3, 0.4}});
  CHECK(parse_coordinates("Here you go:\n(0.25, 0.5)\n(1, 1)\nDone.", 2) == std::vector<Point2>{{0.25, 0.5}, {1, 1}});
  CHECK(parse_coordinates("[[1, 2], [3, 4]]", 2) == std::vector<Point2>{{1, 2}, {3, 4}});
  CHECK(parse_coordinates(R"([{"x": 1, "y": 2}, {"x": .5, "y": +3}])", 2) == std::vector<Point2>{{1, 2}, {0.5, 3}});
}

TEST_CASE("parse_coordinates errors") {
  CHECK(error_code_of([] { parse_coordinates("(1,1)", 2); }) == ErrorCode::WrongCount);
  CHECK(error_code_of([] { parse_coordinates("1,1\n2,2\n3,3", 2); }) == ErrorCode::WrongCount);
  CHECK(error_code_of([] { parse_coordinates("a,b", 1); }) == ErrorCode::MalformedNumber);
  CHECK(error_code_of([] { parse_coordinates("1,2\nx,3", 2); }) == ErrorCode::MalformedNumber);
  CHECK(error_code_of([] { parse_coordinates("", 1); }) == ErrorCode::WrongCount);
}

TEST_CASE("format then parse is the identity") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    std::vector<Point2> pts(static_cast<std::size_t>(rng.integer(1, 12)));
    for (auto& p : pts) p = {rng.uniform(-50, 50), rng.uniform(-1e-3, 1e4)};
    CHECK(parse_coordinates(format_coordinates(pts), pts.size()) == pts);
  }
  CHECK(format_coordinates({{1, 2}, {0.1, -3}}) == "1,2\n0.1,-3\n");
}

TEST_CASE("LLM plan from a mock fixture") {
  auto store = std::make_shared<FixtureStore>();
  const PatternPrompt p = prompt_for(2);
  store->add_text(prompt_fixture_key(p.body), "1.0,2.0\n3.0,4.0");
  MockLanguageClient client(store);
  const DeploymentPlan plan = generate_coordinates_llm(p, client, kBounds);
  CHECK(plan.targets == std::vector<Point2>{{1, 2}, {3, 4}});
  CHECK(generate_coordinates_llm(p, client, kBounds) == plan);
}

TEST_CASE("a wrong count triggers exactly one reprompt") {
  const PatternPrompt p = prompt_for(4);
  ScriptedClient bad({"1,1\n2,2\n3,3"});
  CHECK(error_code_of([&] { generate_coordinates_llm(p, bad, kBounds); }) == ErrorCode::ParseFailure);
  REQUIRE(bad.prompts.size() == 2);
  CHECK(bad.prompts[1].rfind(p.body, 0) == 0);
  CHECK(bad.prompts[1].find("exactly 4 lines") != std::string::npos);

  ScriptedClient recovers({"1,1", "1,1\n2,2\n3,3\n4,4"});
  CHECK(generate_coordinates_llm(p, recovers, kBounds).size() == 4);
  CHECK(recovers.prompts.size() == 2);
}

TEST_CASE("out-of-bounds targets are rejected") {
  ScriptedClient client({"1,1\n20,1"});
  CHECK(error_code_of([&] { generate_coordinates_llm(prompt_for(2), client, kBounds); }) == ErrorCode::OutOfBounds);
  CHECK(client.prompts.size() == 1);
}

TEST_CASE("infill with one robot returns the centroid") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto poly = testing::random_convex(rng, {2, 2}, 0.4, 1.5);
    const ShapeGraph g = testing::graph_from_polygon(poly);
    const auto plan = generate_coordinates_geometric(TaskCategory::Infill, g, 1, {});
    REQUIRE(plan.size() == 1);
    CHECK(plan.targets[0] == g.centroid);
  }
}

TEST_CASE("caging the unit square with 4 robots") {
  const ShapeGraph g = testing::graph_from_polygon(kUnitSquare);
  SolverParams params;
  params.caging_offset = 0.1;
  const auto plan = generate_coordinates_geometric(TaskCategory::Caging, g, 4, params);
  REQUIRE(plan.size() == 4);
  for (const auto& p : plan.targets) {
    CHECK(distance_to_boundary(kUnitSquare, p) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(locate_point(kUnitSquare, p) == PointLocation::Outside);
  }
  // Equal arc spacing from vertex 0 puts one robot off each corner.
  const double d = 0.1 / std::sqrt(2.0);
  CHECK(plan.targets[0].x == doctest::Approx(-d));
  CHECK(plan.targets[0].y == doctest::Approx(-d));
  CHECK(plan.targets[2].x == doctest::Approx(1 + d));
  CHECK(validate_caging(plan.targets, g, 1.5).passed);
}

TEST_CASE("caging points sit exactly caging_offset outside convex polygons") {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const auto poly = testing::random_convex(rng, {3, 3}, 0.3, 2.0);
    const ShapeGraph g = testing::graph_from_polygon(poly);
    SolverParams params;
    params.caging_offset = rng.uniform(0.05, 0.3);
    const int n = rng.integer(3, 30);
    for (const auto& p : generate_coordinates_geometric(TaskCategory::Caging, g, n, params).targets) {
      CHECK(locate_point(poly, p) == PointLocation::Outside);
      CHECK(std::abs(distance_to_boundary(poly, p) - params.caging_offset) <= 1e-6);
    }
  }
}

TEST_CASE("infill points are inside and separated") {
  Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    const auto poly = testing::random_convex(rng, {3, 3}, 0.5, 2.0);
    const ShapeGraph g = testing::graph_from_polygon(poly);
    const int n = rng.integer(1, 15);
    const SolverParams params;
    const auto plan = generate_coordinates_geometric(TaskCategory::Infill, g, n, params);
    REQUIRE(plan.size() == static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < plan.size(); ++i) {
      CHECK(locate_point(poly, plan.targets[i]) == PointLocation::Inside);
      for (std::size_t j = i + 1; j < plan.size(); ++j)
        CHECK(distance(plan.targets[i], plan.targets[j]) >= params.min_separation);
    }
  }
}

TEST_CASE("100 robots at 0.2 m do not fit in a 1 m square") {
  const ShapeGraph g = testing::graph_from_polygon(kUnitSquare);
  SolverParams params;
  params.min_separation = 0.2;
  CHECK(error_code_of([&] { generate_coordinates_geometric(TaskCategory::Infill, g, 100, params); }) ==
        ErrorCode::InfeasibleInfill);
}

TEST_CASE("general placement picks the sharpest vertices, then pads") {
  // Triangle-ish pentagon: two nearly straight vertices.
  const std::vector<Point2> poly{{0, 0}, {2, 0}, {4, 0.05}, {2, 3}, {0.02, 1.5}};
  const ShapeGraph g = testing::graph_from_polygon(poly);
  SolverParams params;
  params.caging_offset = 0.1;
  const auto three = generate_coordinates_geometric(TaskCategory::General, g, 3, params);
  REQUIRE(three.size() == 3);
  CHECK(distance(three.targets[0], poly[0]) == doctest::Approx(0.1));
  CHECK(distance(three.targets[1], poly[2]) == doctest::Approx(0.1));
  CHECK(distance(three.targets[2], poly[3]) == doctest::Approx(0.1));
  const auto eight = generate_coordinates_geometric(TaskCategory::General, g, 8, params);
  CHECK(eight.size() == 8);
  for (const auto& p : eight.targets) CHECK(locate_point(poly, p) == PointLocation::Outside);
}

TEST_CASE("geometric solver input checks") {
  const ShapeGraph g = testing::graph_from_polygon(kUnitSquare);
  CHECK(error_code_of([&] { generate_coordinates_geometric(TaskCategory::Caging, g, 0, {}); }) ==
        ErrorCode::InvariantViolation);
  ShapeGraph broken = g;
  broken.edges.pop_back();
  CHECK(error_code_of([&] { generate_coordinates_geometric(TaskCategory::Caging, broken, 4, {}); }) ==
        ErrorCode::DegenerateGraph);
  SolverParams neg;
  neg.caging_offset = -1;
  CHECK(error_code_of([&] { generate_coordinates_geometric(TaskCategory::Caging, g, 4, neg); }) ==
        ErrorCode::InvariantViolation);
}

TEST_CASE("geometric solver is deterministic") {
  const ShapeGraph g = testing::graph_from_polygon({{0, 0}, {2, 0}, {2.5, 1.5}, {0.5, 2}});
  for (auto c : {TaskCategory::Caging, TaskCategory::Infill, TaskCategory::General})
    CHECK(generate_coordinates_geometric(c, g, 7, {}) == generate_coordinates_geometric(c, g, 7, {}));
}

TEST_CASE("reassignment minimises total travel") {
  const DeploymentPlan plan{{{0, 0}, {10, 0}, {5, 5}}};
  const std::vector<Point2> starts{{9, 0}, {5, 4}, {1, 0}};
  const auto out = reassign_min_distance(plan, starts);
  CHECK(out.targets == std::vector<Point2>{{10, 0}, {5, 5}, {0, 0}});
  CHECK(error_code_of([&] { reassign_min_distance(plan, {{0, 0}}); }) == ErrorCode::InvariantViolation);
}
