#include "zerocap/context.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "zerocap/error.hpp"
#include "zerocap/fsutil.hpp"

namespace zerocap {

using nlohmann::json;

std::string vision_prompt(const EnvironmentScene& scene) {
  std::string p;
  p += "You are the perception stage of a multi-robot pattern formation system.\n";
  p += "The attached image shows the environment seen from above. A user gave this instruction:\n";
  p += "\"" + scene.instruction + "\"\n";
  p += "Think about which object in the image the instruction refers to, even if it is only implied by context, ";
  p += "and what spatial arrangement the robots should form around, inside or along it.\n";
  p += "Reply with a single JSON object and nothing else, with exactly these keys:\n";
  p += "  \"object\": a short noun phrase naming the object of interest\n";
  p += "  \"pattern_instruction\": an imperative sentence telling the robots where to go relative to that object\n";
  p += "Task category: " + std::string(to_string(scene.task_category)) + ". Robots available: " +
       std::to_string(scene.fleet.size()) + ".\n";
  return p;
}

std::string vision_fixture_key(const EnvironmentScene& scene) {
  return scene.name() + "#" + sha256_hex(scene.instruction).substr(0, 16);
}

namespace {

std::string trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_space(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Length of the balanced {...} starting at `start`, honoring JSON strings.
std::size_t balanced_object_length(std::string_view s, std::size_t start) {
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') in_string = true;
    else if (c == '{') ++depth;
    else if (c == '}' && --depth == 0) return i - start + 1;
  }
  return 0;
}

}  // namespace

std::pair<std::string, std::string> extract_fields(std::string_view raw) {
  for (std::size_t pos = raw.find('{'); pos != std::string_view::npos; pos = raw.find('{', pos + 1)) {
    const std::size_t len = balanced_object_length(raw, pos);
    if (len == 0) break;
    const json doc = json::parse(raw.substr(pos, len), nullptr, /*allow_exceptions=*/false);
    if (!doc.is_object() || (!doc.contains("object") && !doc.contains("pattern_instruction"))) continue;

    auto field = [&](const char* key) {
      auto it = doc.find(key);
      if (it == doc.end() || !it->is_string()) throw Error(ErrorCode::EmptyExtraction, std::string("missing '") + key + "'");
      std::string v = trim(it->get<std::string>());
      if (v.empty()) throw Error(ErrorCode::EmptyExtraction, std::string("empty '") + key + "'");
      return v;
    };
    std::string object = field("object");
    std::string pi = field("pattern_instruction");
    return {std::move(object), std::move(pi)};
  }
  throw Error(ErrorCode::MalformedStructure, "reply contains no JSON object with 'object'/'pattern_instruction'");
}

std::string format_fields(const std::string& object_label, const std::string& pattern_instruction) {
  return json{{"object", object_label}, {"pattern_instruction", pattern_instruction}}.dump();
}

ContextResult identify_context(const EnvironmentScene& scene, TextClient& client) {
  CompletionRequest req;
  req.prompt = vision_prompt(scene);
  req.image_png = encode_png(scene.image.channels == 4 ? scene.image.to_rgb() : scene.image);
  req.fixture_key = vision_fixture_key(scene);
  ContextResult out;
  out.raw_response = client.complete(req);
  try {
    std::tie(out.object_label, out.pattern_instruction) = extract_fields(out.raw_response);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedStructure) throw Error(ErrorCode::EmptyExtraction, e.detail());
    throw;
  }
  return out;
}

bool names_category_intent(std::string_view pi, TaskCategory category) {
  std::string lower(pi);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  auto any_of = [&](std::initializer_list<const char*> words) {
    return std::any_of(words.begin(), words.end(), [&](const char* w) { return lower.find(w) != std::string::npos; });
  };
  switch (category) {
    case TaskCategory::General: return any_of({"surround", "around", "corner", "arrange", "place", "position"});
    case TaskCategory::Infill: return any_of({"fill", "inside", "interior", "within", "occupy"});
    case TaskCategory::Caging: return any_of({"cage", "enclose", "boundary", "encircle", "surround", "perimeter"});
  }
  return false;
}

}  // namespace zerocap
