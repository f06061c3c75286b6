#include "rsh/image.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "rsh/error.hpp"

namespace rsh {
namespace {

void check_shape(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidImage, "image dimensions must be positive, got " +
                                             std::to_string(width) + "x" + std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::InvalidImage,
                "image must have 1 or 3 channels, got " + std::to_string(channels));
  }
}

}  // namespace

Image::Image(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(pixel_count() * static_cast<std::size_t>(channels), 0);
}

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_shape(width, height, channels);
  if (data_.size() != pixel_count() * static_cast<std::size_t>(channels)) {
    throw Error(ErrorCode::InvalidImage, "pixel buffer holds " + std::to_string(data_.size()) +
                                             " bytes, expected " +
                                             std::to_string(pixel_count() * channels));
  }
}

std::uint8_t quantize(double value) noexcept {
  // std::round rounds halfway cases away from zero.
  const double r = std::round(value);
  if (!(r > 0.0)) return 0;  // also maps NaN to 0
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

}  // namespace rsh
