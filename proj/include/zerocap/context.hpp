#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "zerocap/client.hpp"
#include "zerocap/scene.hpp"

namespace zerocap {

struct ContextResult {
  std::string object_label;
  std::string pattern_instruction;
  std::string raw_response;
};

/// Prompt sent with the scene image. It asks for a JSON object with exactly
/// the keys "object" and "pattern_instruction".
std::string vision_prompt(const EnvironmentScene& scene);

/// "<scenario name>#<first 16 hex of sha256(instruction)>".
std::string vision_fixture_key(const EnvironmentScene& scene);

/// Pulls (object, pattern_instruction) out of a model reply. The reply may
/// wrap the JSON object in prose or code fences; any extra keys (reasoning
/// traces included) are ignored. Values are whitespace-trimmed.
std::pair<std::string, std::string> extract_fields(std::string_view raw);

/// Inverse of extract_fields for non-empty trimmed inputs.
std::string format_fields(const std::string& object_label, const std::string& pattern_instruction);

ContextResult identify_context(const EnvironmentScene& scene, TextClient& client);

/// True when `pi` mentions the verb family of the category
/// (surround/around, fill/inside, cage/enclose).
bool names_category_intent(std::string_view pi, TaskCategory category);

}  // namespace zerocap
