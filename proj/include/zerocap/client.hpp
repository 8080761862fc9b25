#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace zerocap {

/// Connection settings for one remote model service.
struct EndpointConfig {
  std::string endpoint;  // http(s)://host[:port]/path
  std::string model_name;
  double timeout_s = 60.0;
  int max_retries = 2;
  std::string api_key_env;  // name of the env var holding the bearer token

  void validate() const;
};

/// POSTs `body` as JSON and returns the decoded JSON reply. Timeouts,
/// connection failures, 429 and 5xx replies are retried up to max_retries
/// times; the last failure is rethrown as ClientTimeout, BackendUnavailable
/// or ClientProtocolError.
nlohmann::json post_json(const EndpointConfig& cfg, const nlohmann::json& body);

struct CompletionRequest {
  std::string prompt;
  std::vector<std::uint8_t> image_png;  // empty for text-only requests
  std::string fixture_key;  // used by mocks only
};

/// A model that answers a prompt with text.
class TextClient {
 public:
  virtual ~TextClient() = default;
  virtual std::string complete(const CompletionRequest& request) = 0;
};

/// Remote client speaking {model, prompt[, image]} -> {text}.
class HttpTextClient final : public TextClient {
 public:
  explicit HttpTextClient(EndpointConfig cfg);
  std::string complete(const CompletionRequest& request) override;
  const EndpointConfig& config() const { return cfg_; }

 private:
  EndpointConfig cfg_;
};

/// Fixture files loaded from a mock directory. Each *.json file holds one
/// object, either {key, object, pattern_instruction} (vision) or
/// {key, text} (language). Read-only after construction.
class FixtureStore {
 public:
  FixtureStore() = default;
  explicit FixtureStore(const std::filesystem::path& dir);

  void add_vision(const std::string& key, const std::string& object, const std::string& instruction);
  void add_text(const std::string& key, const std::string& text);

  const std::string* vision_reply(const std::string& key) const;
  const std::string* text_reply(const std::string& key) const;
  std::size_t size() const { return vision_.size() + text_.size(); }

 private:
  std::map<std::string, std::string> vision_;
  std::map<std::string, std::string> text_;
};

/// Answers from vision fixtures, keyed by CompletionRequest::fixture_key.
class MockVisionClient final : public TextClient {
 public:
  explicit MockVisionClient(std::shared_ptr<const FixtureStore> store) : store_(std::move(store)) {}
  std::string complete(const CompletionRequest& request) override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

/// Answers from text fixtures, keyed by the SHA-256 of the prompt body.
class MockLanguageClient final : public TextClient {
 public:
  explicit MockLanguageClient(std::shared_ptr<const FixtureStore> store) : store_(std::move(store)) {}
  std::string complete(const CompletionRequest& request) override;

 private:
  std::shared_ptr<const FixtureStore> store_;
};

std::string prompt_fixture_key(const std::string& prompt);

}  // namespace zerocap
