#pragma once

#include "planesearch/gallery/enhance.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace planesearch::gallery {

class ImageDecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t max_image_pixels = 16'000'000;

struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  std::array<std::uint8_t, 3> pixel(int x, int y) const;
};

/// Decodes a PNG or JPEG byte stream (detected by signature) to 8-bit RGB.
/// Rejects anything larger than max_image_pixels before allocating.
Image decode_image(const std::string& bytes);

/// 8-bit RGB PNG encoding.
std::string encode_png(const Image& image);

/// Reference renderer: apply_enhancement per pixel with round-to-nearest
/// 8-bit quantization.
Image render(const Image& image, const EnhanceParams& params);

std::uint8_t quantize(double value);

}  // namespace planesearch::gallery
