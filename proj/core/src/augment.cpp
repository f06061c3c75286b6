#include "rsh/augment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "rsh/error.hpp"

namespace rsh {
namespace {

using Lut = std::array<std::uint8_t, 256>;

Lut scale_lut(double factor) {
  Lut lut{};
  for (int v = 0; v < 256; ++v) lut[v] = quantize(v * factor);
  return lut;
}

Lut gamma_lut(double gamma) {
  Lut lut{};
  lut[0] = 0;
  for (int v = 1; v < 256; ++v) lut[v] = quantize(255.0 * std::pow(v / 255.0, gamma));
  return lut;
}

Image map_lut(const Image& img, const Lut& lut) {
  Image out = img;
  for (auto& v : out.data()) v = lut[v];
  return out;
}

void check_factor(double factor, const char* what) {
  if (!(factor >= 0.0)) {
    throw Error(ErrorCode::NegativeFactor,
                std::string(what) + " factor must be non-negative, got " + std::to_string(factor));
  }
}

void require_rgb(const Image& img, const char* what) {
  if (img.channels() != 3) {
    throw Error(ErrorCode::ChannelMismatch,
                std::string(what) + " requires a 3-channel image, got " +
                    std::to_string(img.channels()) + " channel(s)");
  }
}

// p1 < p applies; with draws on [0, 1), p = 1 always applies and p = 0 never does.
bool gate(RandomSource& rng, double p) { return rng.next_uniform() < p; }

struct Hsv {
  double h;  // degrees in [0, 360)
  double s;
  double v;
};

Hsv rgb_to_hsv(double r, double g, double b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;
  Hsv out{0.0, mx > 0.0 ? delta / mx : 0.0, mx};
  if (delta > 0.0) {
    if (mx == r) {
      out.h = 60.0 * std::fmod((g - b) / delta, 6.0);
    } else if (mx == g) {
      out.h = 60.0 * ((b - r) / delta + 2.0);
    } else {
      out.h = 60.0 * ((r - g) / delta + 4.0);
    }
    if (out.h < 0.0) out.h += 360.0;
  }
  return out;
}

std::array<double, 3> hsv_to_rgb(const Hsv& hsv) {
  const double c = hsv.v * hsv.s;
  const double hp = hsv.h / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  const double m = hsv.v - c;
  double r = 0.0, g = 0.0, b = 0.0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c, g = x, b = 0; break;
    case 1: r = x, g = c, b = 0; break;
    case 2: r = 0, g = c, b = x; break;
    case 3: r = 0, g = x, b = c; break;
    case 4: r = x, g = 0, b = c; break;
    default: r = c, g = 0, b = x; break;
  }
  return {r + m, g + m, b + m};
}

}  // namespace

double luma(double r, double g, double b) noexcept { return 0.299 * r + 0.587 * g + 0.114 * b; }

Image adjust_brightness(const Image& img, double factor) {
  check_factor(factor, "brightness");
  return map_lut(img, scale_lut(factor));
}

Image apply_gamma(const Image& img, double gamma) {
  if (!(gamma >= 0.0)) {
    throw Error(ErrorCode::NegativeFactor, "gamma must be non-negative");
  }
  return map_lut(img, gamma_lut(gamma));
}

Image adjust_contrast(const Image& img, double factor) {
  check_factor(factor, "contrast");
  const auto px = img.data();
  double sum = 0.0;
  if (img.channels() == 3) {
    for (std::size_t i = 0; i < px.size(); i += 3) sum += luma(px[i], px[i + 1], px[i + 2]);
  } else {
    for (auto v : px) sum += v;
  }
  const double mean = sum / static_cast<double>(img.pixel_count());
  Lut lut{};
  for (int v = 0; v < 256; ++v) lut[v] = quantize(mean + (v - mean) * factor);
  return map_lut(img, lut);
}

Image adjust_saturation(const Image& img, double factor) {
  check_factor(factor, "saturation");
  require_rgb(img, "saturation");
  Image out = img;
  auto px = out.data();
  for (std::size_t i = 0; i < px.size(); i += 3) {
    const double gray = luma(px[i], px[i + 1], px[i + 2]);
    for (std::size_t c = 0; c < 3; ++c) px[i + c] = quantize(gray + (px[i + c] - gray) * factor);
  }
  return out;
}

Image shift_hue(const Image& img, double turns) {
  require_rgb(img, "hue");
  Image out = img;
  auto px = out.data();
  const double shift = turns * 360.0;
  for (std::size_t i = 0; i < px.size(); i += 3) {
    Hsv hsv = rgb_to_hsv(px[i] / 255.0, px[i + 1] / 255.0, px[i + 2] / 255.0);
    hsv.h = std::fmod(hsv.h + shift, 360.0);
    if (hsv.h < 0.0) hsv.h += 360.0;
    const auto rgb = hsv_to_rgb(hsv);
    for (std::size_t c = 0; c < 3; ++c) px[i + c] = quantize(rgb[c] * 255.0);
  }
  return out;
}

Outcome apply_rsh_detailed(const Image& img, const RshParams& params, RandomSource& rng) {
  validate(params);
  if (!gate(rng, params.p)) return {img, false, std::nullopt};

  const Trapezoid trap = sample_trapezoid(params, img.height(), rng);
  const Mask mask = rasterize_mask(trap, img.width(), img.height());
  const double shadow = uniform_in(rng, params.shadow_range.lo, params.shadow_range.hi);
  const double highlight = uniform_in(rng, params.highlight_range.lo, params.highlight_range.hi);

  const Lut shadow_lut = scale_lut(shadow);
  const Lut highlight_lut = scale_lut(highlight);
  Image out = img;
  const int channels = img.channels();
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Lut& lut = mask.at(x, y) ? shadow_lut : highlight_lut;
      for (int c = 0; c < channels; ++c) out.at(x, y, c) = lut[img.at(x, y, c)];
    }
  }
  return {std::move(out), true, mask_area_fraction(mask)};
}

Image apply_rsh(const Image& img, const RshParams& params, RandomSource& rng) {
  return apply_rsh_detailed(img, params, rng).image;
}

Outcome random_gamma_detailed(const Image& img, const GammaParams& params, RandomSource& rng) {
  validate(params);
  if (!gate(rng, params.p)) return {img, false, std::nullopt};
  const double gamma = uniform_in(rng, params.gamma_range.lo, params.gamma_range.hi);
  return {apply_gamma(img, gamma), true, std::nullopt};
}

Image random_gamma(const Image& img, const GammaParams& params, RandomSource& rng) {
  return random_gamma_detailed(img, params, rng).image;
}

Outcome color_jitter_detailed(const Image& img, const JitterParams& params, RandomSource& rng) {
  validate(params);
  const bool gray = img.channels() == 1;
  const bool needs_saturation = params.saturation_range != Range{1.0, 1.0};
  const bool needs_hue = params.hue_range != Range{0.0, 0.0};
  if (gray && (needs_saturation || needs_hue)) {
    throw Error(ErrorCode::ChannelMismatch,
                "color jitter saturation and hue need RGB input; set saturation_range to [1, 1] "
                "and hue_range to [0, 0] for grayscale images");
  }
  if (!gate(rng, params.p)) return {img, false, std::nullopt};

  const double brightness = uniform_in(rng, params.brightness_range.lo, params.brightness_range.hi);
  Image out = adjust_brightness(img, brightness);
  const double contrast = uniform_in(rng, params.contrast_range.lo, params.contrast_range.hi);
  out = adjust_contrast(out, contrast);
  const double saturation = uniform_in(rng, params.saturation_range.lo, params.saturation_range.hi);
  const double hue = uniform_in(rng, params.hue_range.lo, params.hue_range.hi);
  if (!gray) {
    out = adjust_saturation(out, saturation);
    out = shift_hue(out, hue);
  }
  return {std::move(out), true, std::nullopt};
}

Image color_jitter(const Image& img, const JitterParams& params, RandomSource& rng) {
  return color_jitter_detailed(img, params, rng).image;
}

Outcome disk_illumination_detailed(const Image& img, const DiskParams& params, RandomSource& rng) {
  validate(params);
  if (!gate(rng, params.p)) return {img, false, std::nullopt};

  const double w = img.width();
  const double h = img.height();
  const double cx = rng.next_uniform() * w;
  const double cy = rng.next_uniform() * h;
  const double radius =
      uniform_in(rng, params.radius_range.lo, params.radius_range.hi) * std::min(w, h);
  const double factor = uniform_in(rng, params.factor_range.lo, params.factor_range.hi);

  const Lut lut = scale_lut(factor);
  const double r2 = radius * radius;
  Image out = img;
  for (int y = 0; y < img.height(); ++y) {
    const double dy = y + 0.5 - cy;
    for (int x = 0; x < img.width(); ++x) {
      const double dx = x + 0.5 - cx;
      if (dx * dx + dy * dy < r2) {
        for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = lut[img.at(x, y, c)];
      }
    }
  }
  return {std::move(out), true, std::nullopt};
}

Image disk_illumination(const Image& img, const DiskParams& params, RandomSource& rng) {
  return disk_illumination_detailed(img, params, rng).image;
}

Outcome apply_op(const Image& img, const OpParams& params, RandomSource& rng) {
  return std::visit(
      [&](const auto& p) -> Outcome {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RshParams>) {
          return apply_rsh_detailed(img, p, rng);
        } else if constexpr (std::is_same_v<T, GammaParams>) {
          return random_gamma_detailed(img, p, rng);
        } else if constexpr (std::is_same_v<T, JitterParams>) {
          return color_jitter_detailed(img, p, rng);
        } else if constexpr (std::is_same_v<T, DiskParams>) {
          return disk_illumination_detailed(img, p, rng);
        } else {
          return {img, false, std::nullopt};
        }
      },
      params);
}

}  // namespace rsh
