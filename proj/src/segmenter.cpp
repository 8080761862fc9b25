#include "zerocap/segmenter.hpp"

#include <algorithm>
#include <filesystem>

#include "zerocap/error.hpp"
#include "zerocap/fsutil.hpp"

namespace zerocap {

using nlohmann::json;

void GateConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw Error(ErrorCode::InvariantViolation, "gate threshold: must lie in [0,1]");
}

GateOutcome gate(const SegmentationResult& result, const GateConfig& cfg) {
  if (result.alpha < cfg.threshold) return {false, std::string(kInsufficientSegmentation)};
  return {true, {}};
}

RawSegmentation OracleSegmentation::run(std::string_view, const EnvironmentScene& scene) {
  const auto mask_path = scene.sidecar(".mask.png");
  if (!std::filesystem::exists(mask_path))
    throw Error(ErrorCode::BackendUnavailable, "oracle mask " + mask_path.string() + " not found");
  RawSegmentation out;
  out.mask = read_png(mask_path).to_gray();
  out.score = 1.0;
  const auto seg_path = scene.sidecar(".seg.json");
  if (std::filesystem::exists(seg_path)) {
    const json doc = json::parse(read_file_text(seg_path), nullptr, false);
    if (!doc.is_object() || !doc.contains("alpha") || !doc["alpha"].is_number())
      throw Error(ErrorCode::ParseError, seg_path.string() + ": expected {\"alpha\": number}");
    out.score = doc["alpha"].get<double>();
  }
  return out;
}

HttpSegmentation::HttpSegmentation(EndpointConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

RawSegmentation decode_segmentation_reply(const json& reply) {
  auto decode_one = [](const json& item) {
    if (!item.is_object() || !item.contains("mask") || !item["mask"].is_string())
      throw Error(ErrorCode::BackendUnavailable, "segmentation reply lacks a base64 'mask'");
    RawSegmentation r;
    r.mask = decode_png(base64_decode(item["mask"].get<std::string>())).to_gray();
    r.score = item.value("score", 0.0);
    return r;
  };
  if (auto masks = reply.find("masks"); masks != reply.end() && masks->is_array()) {
    if (masks->empty()) throw Error(ErrorCode::BackendUnavailable, "segmentation reply has no instances");
    const json* best = &(*masks)[0];
    for (const auto& m : *masks)
      if (m.value("score", 0.0) > best->value("score", 0.0)) best = &m;
    return decode_one(*best);
  }
  return decode_one(reply);
}

RawSegmentation HttpSegmentation::run(std::string_view object_label, const EnvironmentScene& scene) {
  const auto png = encode_png(scene.image.channels == 4 ? scene.image.to_rgb() : scene.image);
  const json body{{"image", base64_encode(png)}, {"prompt", std::string(object_label)}};
  try {
    return decode_segmentation_reply(post_json(cfg_, body));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ClientTimeout || e.code() == ErrorCode::ClientProtocolError || e.code() == ErrorCode::ParseError)
      throw Error(ErrorCode::BackendUnavailable, std::string(e.what()));
    throw;
  }
}

SegmentationResult segment(std::string_view object_label, const EnvironmentScene& scene, SegmentationBackend& backend) {
  if (object_label.empty()) throw Error(ErrorCode::InvariantViolation, "object_label: must be non-empty");
  RawSegmentation raw = backend.run(object_label, scene);
  if (raw.mask.width != scene.image.width || raw.mask.height != scene.image.height)
    throw Error(ErrorCode::DimensionMismatch,
                "mask " + std::to_string(raw.mask.width) + "x" + std::to_string(raw.mask.height) + " vs image " +
                    std::to_string(scene.image.width) + "x" + std::to_string(scene.image.height));
  const Image gray = raw.mask.to_gray();
  const std::uint8_t max_value = gray.data.empty() ? 0 : *std::max_element(gray.data.begin(), gray.data.end());
  const double cutoff = backend.foreground_cutoff(max_value);
  SegmentationResult out;
  out.mask = BinaryMask(gray.width, gray.height);
  if (max_value > 0)
    for (std::size_t i = 0; i < gray.data.size(); ++i) out.mask.bits[i] = gray.data[i] > cutoff ? 1 : 0;
  out.alpha = std::clamp(raw.score, 0.0, 1.0);
  return out;
}

}  // namespace zerocap
