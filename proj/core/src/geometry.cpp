#include "rsh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rsh/error.hpp"

namespace rsh {

double Trapezoid::top_at(double x, double width) const noexcept {
  const double t = x / width;
  return left_top + (right_top - left_top) * t;
}

double Trapezoid::bottom_at(double x, double width) const noexcept {
  const double left = left_top + left_height;
  const double right = right_top + right_height;
  const double t = x / width;
  return left + (right - left) * t;
}

Mask::Mask(int width, int height, bool fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "mask dimensions must be positive, got " +
                                                std::to_string(width) + "x" +
                                                std::to_string(height));
  }
  bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
               fill ? 1 : 0);
}

std::size_t Mask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

Trapezoid sample_trapezoid(const RshParams& params, int height, RandomSource& rng) {
  if (height < 1) {
    throw Error(ErrorCode::InvalidArgument, "trapezoid height must be positive");
  }
  const double h = static_cast<double>(height);
  Trapezoid trap;
  trap.left_height = uniform_in(rng, params.left_lower.lo, params.left_lower.hi) * h;
  trap.left_top = uniform_in(rng, params.left_upper.lo, params.left_upper.hi) * h;
  trap.right_height = uniform_in(rng, params.right_lower.lo, params.right_lower.hi) * h;
  trap.right_top = uniform_in(rng, params.right_upper.lo, params.right_upper.hi) * h;
  return trap;
}

Mask rasterize_mask(const Trapezoid& trap, int width, int height) {
  Mask mask(width, height);
  const double w = static_cast<double>(width);
  for (int x = 0; x < width; ++x) {
    const double xc = x + 0.5;
    const double top = trap.top_at(xc, w);
    const double bottom = trap.bottom_at(xc, w);
    if (bottom < 0.5 || top > height - 0.5) continue;
    // First and last rows whose centre falls in [top, bottom]; the centre
    // comparison is repeated so that rounding in ceil/floor cannot admit or
    // drop a boundary row.
    const double lo = std::max(top, 0.0);
    const double hi = std::min(bottom, static_cast<double>(height));
    const int y0 = std::max(0, static_cast<int>(std::ceil(lo - 0.5)) - 1);
    const int y1 = std::min(height - 1, static_cast<int>(std::floor(hi - 0.5)) + 1);
    for (int y = y0; y <= y1; ++y) {
      const double yc = y + 0.5;
      if (top <= yc && yc <= bottom) mask.set(x, y, true);
    }
  }
  return mask;
}

Mask invert_mask(const Mask& mask) {
  Mask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) out.set(x, y, !mask.at(x, y));
  }
  return out;
}

double mask_area_fraction(const Mask& mask) noexcept {
  const auto total =
      static_cast<double>(mask.width()) * static_cast<double>(mask.height());
  return static_cast<double>(mask.count()) / total;
}

}  // namespace rsh
