#pragma once

#include <optional>

#include "rsh/geometry.hpp"
#include "rsh/image.hpp"
#include "rsh/params.hpp"
#include "rsh/random.hpp"

namespace rsh {

/// Multiplies every channel by `factor` and quantizes. Throws NegativeFactor.
Image adjust_brightness(const Image& img, double factor);

/// Result of a gated transform. `mask_area` is set only for an applied RSH.
struct Outcome {
  Image image;
  bool applied = false;
  std::optional<double> mask_area;
};

/// Random Shadows and Highlights.
///
/// Draws p1 first; when p1 >= p the input is returned untouched after that
/// single draw. Otherwise six more draws follow in this order: left height,
/// left top, right height, right top, shadow factor, highlight factor. Pixels
/// inside the trapezoid are scaled by the shadow factor, the rest by the
/// highlight factor.
Outcome apply_rsh_detailed(const Image& img, const RshParams& params, RandomSource& rng);
Image apply_rsh(const Image& img, const RshParams& params, RandomSource& rng);

/// v -> 255 * (v / 255)^gamma, with 0 fixed at 0. Draws: p1, gamma.
Outcome random_gamma_detailed(const Image& img, const GammaParams& params, RandomSource& rng);
Image random_gamma(const Image& img, const GammaParams& params, RandomSource& rng);

/// Brightness, contrast, saturation and hue, always in that order, each with
/// its own draw after p1. Grayscale input is rejected with ChannelMismatch
/// unless the saturation range is (1, 1) and the hue range is (0, 0).
Outcome color_jitter_detailed(const Image& img, const JitterParams& params, RandomSource& rng);
Image color_jitter(const Image& img, const JitterParams& params, RandomSource& rng);

/// Hard-edged disk of scaled brightness. Draws: p1, centre x, centre y,
/// radius fraction, factor. A pixel is lit when its centre is strictly
/// closer than the radius.
Outcome disk_illumination_detailed(const Image& img, const DiskParams& params, RandomSource& rng);
Image disk_illumination(const Image& img, const DiskParams& params, RandomSource& rng);

/// Dispatches on the parameter type. Op::none returns the input unchanged
/// without drawing.
Outcome apply_op(const Image& img, const OpParams& params, RandomSource& rng);

/// Deterministic colour primitives used by color_jitter.
Image adjust_contrast(const Image& img, double factor);
Image adjust_saturation(const Image& img, double factor);
Image shift_hue(const Image& img, double turns);
Image apply_gamma(const Image& img, double gamma);

double luma(double r, double g, double b) noexcept;

}  // namespace rsh
