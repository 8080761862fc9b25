#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace zerocap {

struct PixelPoint {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

/// 8-bit raster with 1 (gray), 3 (RGB) or 4 (RGBA) interleaved channels.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int w, int h, int c, std::uint8_t fill = 0);

  std::uint8_t& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  std::uint8_t at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  Image to_rgb() const;
  Image to_gray() const;

  friend bool operator==(const Image&, const Image&) = default;
};

/// Binary raster; every cell is 0 or 1.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  BinaryMask() = default;
  BinaryMask(int w, int h, std::uint8_t fill = 0);

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  std::uint8_t& at(int x, int y) { return bits[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
  /// Out-of-range reads are background.
  std::uint8_t get(int x, int y) const { return in_bounds(x, y) ? at(x, y) : 0; }

  std::size_t count() const;
  bool is_binary() const;

  /// 0 -> 0, 1 -> 255 gray image.
  Image to_image() const;
  /// Pixels strictly greater than `threshold` in the first channel become 1.
  static BinaryMask from_image(const Image& img, std::uint8_t threshold = 127);

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
};

Image read_png(const std::filesystem::path& path);
Image decode_png(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_png(const Image& img);
void write_png(const std::filesystem::path& path, const Image& img);

}  // namespace zerocap
