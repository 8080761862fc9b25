#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "zerocap/client.hpp"
#include "zerocap/raster.hpp"
#include "zerocap/scene.hpp"

namespace zerocap {

inline constexpr std::string_view kInsufficientSegmentation = "Insufficient segmentation accuracy.";

struct SegmentationResult {
  BinaryMask mask;
  double alpha = 0.0;  // backend-reported confidence, opaque
};

struct GateConfig {
  double threshold = 0.5;

  void validate() const;
};

struct GateOutcome {
  bool passed = false;
  std::string message;  // kInsufficientSegmentation on abort, empty on pass
};

/// Passes iff alpha >= threshold.
GateOutcome gate(const SegmentationResult& result, const GateConfig& cfg);

/// Raw backend output before binarization and size checks.
struct RawSegmentation {
  Image mask;
  double score = 1.0;
};

class SegmentationBackend {
 public:
  virtual ~SegmentationBackend() = default;
  virtual RawSegmentation run(std::string_view object_label, const EnvironmentScene& scene) = 0;
  /// Gray level above which a pixel is foreground, given the mask's maximum.
  virtual double foreground_cutoff(std::uint8_t max_value) const { return 0.5 * max_value; }
};

/// Reads "<scenario>.mask.png" next to the scenario file (>127 foreground).
/// Reports alpha 1.0 unless "<scenario>.seg.json" supplies {"alpha": a}.
class OracleSegmentation final : public SegmentationBackend {
 public:
  RawSegmentation run(std::string_view object_label, const EnvironmentScene& scene) override;
  double foreground_cutoff(std::uint8_t) const override { return 127.0; }
};

/// Remote service: POST {image, prompt} -> {mask, score} or
/// {masks: [{mask, score}, ...]}; masks are base64 8-bit gray PNG.
class HttpSegmentation final : public SegmentationBackend {
 public:
  explicit HttpSegmentation(EndpointConfig cfg);
  RawSegmentation run(std::string_view object_label, const EnvironmentScene& scene) override;

 private:
  EndpointConfig cfg_;
};

/// Runs the backend, binarizes at the backend cutoff and checks dimensions.
SegmentationResult segment(std::string_view object_label, const EnvironmentScene& scene,
                           SegmentationBackend& backend);

/// Picks the highest-score instance out of a remote reply.
RawSegmentation decode_segmentation_reply(const nlohmann::json& reply);

}  // namespace zerocap
