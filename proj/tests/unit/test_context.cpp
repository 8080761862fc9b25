#include <doctest.h>

#include "support.hpp"
#include "zerocap/context.hpp"

using namespace zerocap;
using testing::error_code_of;

namespace {

EnvironmentScene scene_with(const std::string& instruction) {
  EnvironmentScene s;
  s.image = Image(16, 16, 3, 90);
  s.instruction = instruction;
  s.task_category = TaskCategory::General;
  s.fleet.robots = {{0, {0.01, 0.01}, 0.5}, {1, {0.02, 0.01}, 0.5}};
  s.source_path = "/suite/parked_car.json";
  return s;
}

class RecordingClient final : public TextClient {
 public:
  explicit RecordingClient(std::string reply) : reply_(std::move(reply)) {}
  std::string complete(const CompletionRequest& request) override {
    last = request;
    ++calls;
    return reply_;
  }
  CompletionRequest last;
  int calls = 0;

 private:
  std::string reply_;
};

}  // namespace

TEST_CASE("hidden-object instruction resolves to the car") {
  const auto scene = scene_with("Surround the incorrectly parked car at the corners!");
  auto store = std::make_shared<FixtureStore>();
  store->add_vision(vision_fixture_key(scene), "car", "place one robot at each corner of the parked car");
  MockVisionClient client(store);
  const ContextResult r = identify_context(scene, client);
  CHECK(r.object_label.find("car") != std::string::npos);
  CHECK(names_category_intent(r.pattern_instruction, TaskCategory::General));
}

TEST_CASE("mock fixture pair is echoed exactly") {
  const auto scene = scene_with("Put robots on the corners of the red cube.");
  auto store = std::make_shared<FixtureStore>();
  store->add_vision(vision_fixture_key(scene), "red cube", "place robots at the four corners of the red cube");
  MockVisionClient client(store);
  const ContextResult a = identify_context(scene, client);
  const ContextResult b = identify_context(scene, client);
  CHECK(a.object_label == "red cube");
  CHECK(a.pattern_instruction == "place robots at the four corners of the red cube");
  CHECK(a.raw_response == b.raw_response);
}

TEST_CASE("identify_context sends the instruction and the image") {
  const auto scene = scene_with("Cage the blue bin.");
  RecordingClient client(R"({"object":"blue bin","pattern_instruction":"cage the blue bin"})");
  const ContextResult r = identify_context(scene, client);
  CHECK(r.object_label == "blue bin");
  CHECK(client.calls == 1);
  CHECK(client.last.prompt.find("Cage the blue bin.") != std::string::npos);
  CHECK(client.last.prompt.find("\"object\"") != std::string::npos);
  CHECK(client.last.prompt.find("\"pattern_instruction\"") != std::string::npos);
  CHECK(decode_png(client.last.image_png) == scene.image);
  CHECK(client.last.fixture_key.rfind("parked_car#", 0) == 0);
  CHECK(client.last.fixture_key.size() == std::string("parked_car#").size() + 16);
}

TEST_CASE("replies without an object field fail with EmptyExtraction") {
  const auto scene = scene_with("Fill the rug.");
  RecordingClient prose("I think the robots should go somewhere nice.");
  CHECK(error_code_of([&] { identify_context(scene, prose); }) == ErrorCode::EmptyExtraction);
  RecordingClient half(R"({"pattern_instruction":"fill it"})");
  CHECK(error_code_of([&] { identify_context(scene, half); }) == ErrorCode::EmptyExtraction);
}

TEST_CASE("extract_fields") {
  const auto [o, pi] = extract_fields(R"({"object":"blue bin","pattern_instruction":"cage the blue bin"})");
  CHECK(o == "blue bin");
  CHECK(pi == "cage the blue bin");

  CHECK(error_code_of([] { extract_fields(R"({"object":""})"); }) == ErrorCode::EmptyExtraction);
  CHECK(error_code_of([] { extract_fields(R"({"object":"   ","pattern_instruction":"x"})"); }) ==
        ErrorCode::EmptyExtraction);
  CHECK(error_code_of([] { extract_fields("just some prose"); }) == ErrorCode::MalformedStructure);
  CHECK(error_code_of([] { extract_fields(R"({"unrelated": 1})"); }) == ErrorCode::MalformedStructure);
}

TEST_CASE("extract_fields tolerates fences, prose and reasoning keys") {
  const std::string raw =
      "Let me think {about it}.\n```json\n"
      R"({"reasoning":"the car is parked across two bays {oddly}","object":"  car ","pattern_instruction":"surround the car\n"})"
      "\n```\nDone.";
  const auto [o, pi] = extract_fields(raw);
  CHECK(o == "car");
  CHECK(pi == "surround the car");
}

TEST_CASE("format_fields round trips through extract_fields") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"red cube", "place robots at the corners"},
      {"the \"odd\" {thing}", "line one\nline two"},
      {"caf\xc3\xa9 table", "encircle it, please \\ now"},
  };
  for (const auto& [o, pi] : cases) CHECK(extract_fields(format_fields(o, pi)) == std::make_pair(o, pi));
}

TEST_CASE("category intent vocabulary") {
  CHECK(names_category_intent("Surround the car", TaskCategory::General));
  CHECK(names_category_intent("Fill the region evenly", TaskCategory::Infill));
  CHECK(names_category_intent("Enclose the box", TaskCategory::Caging));
  CHECK_FALSE(names_category_intent("Enclose the box", TaskCategory::Infill));
}
