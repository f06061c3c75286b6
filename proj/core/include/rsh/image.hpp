#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rsh {

/// Interleaved 8-bit raster, row-major, 1 (gray) or 3 (RGB) channels.
class Image {
 public:
  /// Zero-filled image. Throws InvalidImage on empty size or bad channel count.
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::uint8_t at(int x, int y, int c) const noexcept { return data_[index(x, y, c)]; }
  std::uint8_t& at(int x, int y, int c) noexcept { return data_[index(x, y, c)]; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_;
  int height_;
  int channels_;
  std::vector<std::uint8_t> data_;
};

/// Round half away from zero, then clamp to [0, 255].
std::uint8_t quantize(double value) noexcept;

}  // namespace rsh
