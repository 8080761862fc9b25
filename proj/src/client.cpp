#include "zerocap/client.hpp"

#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "zerocap/error.hpp"
#include "zerocap/fsutil.hpp"

namespace zerocap {

namespace fs = std::filesystem;
using nlohmann::json;

void EndpointConfig::validate() const {
  if (endpoint.empty()) throw Error(ErrorCode::InvariantViolation, "endpoint: must be set");
  if (!(timeout_s > 0.0)) throw Error(ErrorCode::InvariantViolation, "timeout: must be > 0");
  if (max_retries < 0) throw Error(ErrorCode::InvariantViolation, "max_retries: must be >= 0");
}

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host:port
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos)
    throw Error(ErrorCode::InvariantViolation, "endpoint: missing scheme in '" + url + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

json post_json(const EndpointConfig& cfg, const json& body) {
  cfg.validate();
  const SplitUrl url = split_url(cfg.endpoint);
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!cfg.api_key_env.empty()) {
    if (const char* key = std::getenv(cfg.api_key_env.c_str()); key && *key)
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  const auto secs = static_cast<time_t>(cfg.timeout_s);
  const auto usecs = static_cast<time_t>((cfg.timeout_s - static_cast<double>(secs)) * 1e6);

  ErrorCode last_code = ErrorCode::BackendUnavailable;
  std::string last_detail;
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    httplib::Client client(url.origin);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    auto res = client.Post(url.path, headers, payload, "application/json");
    if (!res) {
      const auto err = res.error();
      last_code = (err == httplib::Error::Read || err == httplib::Error::Write ||
                   err == httplib::Error::ConnectionTimeout)
                      ? ErrorCode::ClientTimeout
                      : ErrorCode::BackendUnavailable;
      last_detail = cfg.endpoint + ": " + httplib::to_string(err);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_code = ErrorCode::ClientProtocolError;
      last_detail = cfg.endpoint + ": HTTP " + std::to_string(res->status);
      if (retryable_status(res->status)) continue;
      break;
    }
    try {
      return json::parse(res->body);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ClientProtocolError, cfg.endpoint + ": reply is not JSON (" + e.what() + ")");
    }
  }
  throw Error(last_code, last_detail + " after " + std::to_string(cfg.max_retries + 1) + " attempt(s)");
}

HttpTextClient::HttpTextClient(EndpointConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

std::string HttpTextClient::complete(const CompletionRequest& request) {
  json body{{"model", cfg_.model_name}, {"prompt", request.prompt}};
  if (!request.image_png.empty()) body["image"] = base64_encode(request.image_png);
  const json reply = post_json(cfg_, body);
  auto it = reply.find("text");
  if (it == reply.end() || !it->is_string())
    throw Error(ErrorCode::ClientProtocolError, cfg_.endpoint + ": reply lacks a string 'text' field");
  return it->get<std::string>();
}

FixtureStore::FixtureStore(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::MissingFile, "mock directory " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    json doc;
    try {
      doc = json::parse(read_file_text(file));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, file.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("key") || !doc["key"].is_string())
      throw Error(ErrorCode::ParseError, file.string() + ": fixture needs a string 'key'");
    const std::string key = doc["key"].get<std::string>();
    if (doc.contains("text")) {
      add_text(key, doc["text"].get<std::string>());
    } else if (doc.contains("object") || doc.contains("pattern_instruction")) {
      add_vision(key, doc.value("object", std::string{}), doc.value("pattern_instruction", std::string{}));
    } else {
      throw Error(ErrorCode::ParseError, file.string() + ": fixture has neither 'text' nor 'object'");
    }
  }
}

void FixtureStore::add_vision(const std::string& key, const std::string& object, const std::string& instruction) {
  vision_[key] = json{{"object", object}, {"pattern_instruction", instruction}}.dump();
}

void FixtureStore::add_text(const std::string& key, const std::string& text) { text_[key] = text; }

const std::string* FixtureStore::vision_reply(const std::string& key) const {
  auto it = vision_.find(key);
  return it == vision_.end() ? nullptr : &it->second;
}

const std::string* FixtureStore::text_reply(const std::string& key) const {
  auto it = text_.find(key);
  return it == text_.end() ? nullptr : &it->second;
}

std::string MockVisionClient::complete(const CompletionRequest& request) {
  if (const std::string* reply = store_->vision_reply(request.fixture_key)) return *reply;
  throw Error(ErrorCode::MissingFixture, "no vision fixture for key '" + request.fixture_key + "'");
}

std::string prompt_fixture_key(const std::string& prompt) { return sha256_hex(prompt); }

std::string MockLanguageClient::complete(const CompletionRequest& request) {
  const std::string key = prompt_fixture_key(request.prompt);
  if (const std::string* reply = store_->text_reply(key)) return *reply;
  throw Error(ErrorCode::MissingFixture, "no language fixture for prompt key '" + key + "'");
}

}  // namespace zerocap
