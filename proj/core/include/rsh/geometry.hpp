#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rsh/params.hpp"
#include "rsh/random.hpp"

namespace rsh {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Quadrilateral with vertical sides on x = 0 and x = W. All lengths are in
/// pixels; y grows downwards.
struct Trapezoid {
  double left_top = 0.0;      // distance of the upper-left corner from row 0
  double left_height = 0.0;   // length of the left side
  double right_top = 0.0;
  double right_height = 0.0;

  Point top_left() const noexcept { return {0.0, left_top}; }
  Point bottom_left() const noexcept { return {0.0, left_top + left_height}; }
  Point top_right(double width) const noexcept { return {width, right_top}; }
  Point bottom_right(double width) const noexcept { return {width, right_top + right_height}; }

  /// Upper and lower edge ordinates at abscissa x of an image of the given width.
  double top_at(double x, double width) const noexcept;
  double bottom_at(double x, double width) const noexcept;
};

/// Single-plane boolean raster, true inside the shadow region.
class Mask {
 public:
  Mask(int width, int height, bool fill = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool at(int x, int y) const noexcept { return bits_[index(x, y)] != 0; }
  void set(int x, int y, bool value) noexcept { bits_[index(x, y)] = value ? 1 : 0; }

  std::size_t count() const noexcept;

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// Four draws, in order: left height, left top, right height, right top.
/// Each is a fraction of `height`.
Trapezoid sample_trapezoid(const RshParams& params, int height, RandomSource& rng);

/// A pixel is inside when its centre lies between the upper and lower edges,
/// both inclusive. Parts of the trapezoid outside the image are dropped.
Mask rasterize_mask(const Trapezoid& trap, int width, int height);

Mask invert_mask(const Mask& mask);

double mask_area_fraction(const Mask& mask) noexcept;

}  // namespace rsh
