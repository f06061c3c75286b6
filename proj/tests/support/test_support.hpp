#pragma once

// Test doubles and independent oracles. Nothing here calls into the code
// paths it is used to check (rasterizer, brightness LUTs, quantizer).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsh/image.hpp"
#include "rsh/params.hpp"
#include "rsh/random.hpp"

namespace rsh::test {

/// Replays a fixed list of draws; running past the end is a test bug.
class ScriptedSource final : public RandomSource {
 public:
  explicit ScriptedSource(std::vector<double> draws) : draws_(std::move(draws)) {}

  double next_uniform() override {
    if (next_ >= draws_.size()) throw std::logic_error("ScriptedSource exhausted");
    return draws_[next_++];
  }
  std::size_t consumed() const noexcept { return next_; }

 private:
  std::vector<double> draws_;
  std::size_t next_ = 0;
};

class CountingSource final : public RandomSource {
 public:
  explicit CountingSource(RandomSource& inner) : inner_(inner) {}

  double next_uniform() override {
    ++count_;
    return inner_.next_uniform();
  }
  std::size_t count() const noexcept { return count_; }
  void reset() noexcept { count_ = 0; }

 private:
  RandomSource& inner_;
  std::size_t count_ = 0;
};

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 gen{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() /
            ("rsh_test_" + std::to_string(gen()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline Image random_image(std::mt19937_64& gen, int w, int h, int channels) {
  Image img(w, h, channels);
  std::uniform_int_distribution<int> dist(0, 255);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(dist(gen));
  return img;
}

inline Image constant_image(int w, int h, int channels, std::uint8_t value) {
  Image img(w, h, channels);
  std::fill(img.data().begin(), img.data().end(), value);
  return img;
}

/// Round half away from zero for the non-negative values the transforms
/// produce, then clamp.
inline int oracle_quantize(double v) {
  const double r = v >= 0 ? std::floor(v + 0.5) : -std::floor(-v + 0.5);
  return static_cast<int>(std::clamp(r, 0.0, 255.0));
}

/// Convex-polygon membership by edge cross products, boundary inclusive.
/// Corners are given in the order top-left, top-right, bottom-right,
/// bottom-left (clockwise on screen with y pointing down).
inline bool oracle_point_in_quad(const std::array<std::array<double, 2>, 4>& quad, double px,
                                 double py) {
  for (int i = 0; i < 4; ++i) {
    const auto& a = quad[i];
    const auto& b = quad[(i + 1) % 4];
    const double cross = (b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]);
    if (cross < 0) return false;
  }
  return true;
}

/// Corners of a trapezoid built from its four edge lengths.
inline std::array<std::array<double, 2>, 4> oracle_quad(double width, double left_top,
                                                        double left_height, double right_top,
                                                        double right_height) {
  return {{{0.0, left_top},
           {width, right_top},
           {width, right_top + right_height},
           {0.0, left_top + left_height}}};
}

/// Row-major boolean raster of pixel centres inside the quad.
inline std::vector<bool> oracle_mask(const std::array<std::array<double, 2>, 4>& quad, int w,
                                     int h) {
  std::vector<bool> bits(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bits[static_cast<std::size_t>(y) * w + x] = oracle_point_in_quad(quad, x + 0.5, y + 0.5);
    }
  }
  return bits;
}

/// RSH output rebuilt from recorded draws (gate first, then the six
/// sampled quantities) with the polygon oracle and plain arithmetic.
inline Image oracle_rsh(const Image& img, const RshParams& p, const std::vector<double>& d) {
  const double h = img.height();
  auto at = [](const Range& r, double u) { return r.lo + u * (r.hi - r.lo); };
  const double left_height = at(p.left_lower, d[1]) * h;
  const double left_top = at(p.left_upper, d[2]) * h;
  const double right_height = at(p.right_lower, d[3]) * h;
  const double right_top = at(p.right_upper, d[4]) * h;
  const double shadow = at(p.shadow_range, d[5]);
  const double highlight = at(p.highlight_range, d[6]);
  const auto quad = oracle_quad(img.width(), left_top, left_height, right_top, right_height);
  Image out(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const bool inside = oracle_point_in_quad(quad, x + 0.5, y + 0.5);
      for (int c = 0; c < img.channels(); ++c) {
        const double v = img.at(x, y, c);
        out.at(x, y, c) = static_cast<std::uint8_t>(oracle_quantize(v * (inside ? shadow : highlight)));
      }
    }
  }
  return out;
}

/// Expected clipped area fraction of the RSH trapezoid, estimated by
/// throwing uniform points into the unit square against freshly sampled
/// trapezoids (std::mt19937_64, not the library generator).
inline double monte_carlo_mask_area(const RshParams& params, std::size_t samples,
                                    std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto draw = [&](const Range& r) { return r.lo + (r.hi - r.lo) * u(gen); };
  std::size_t inside = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double left_height = draw(params.left_lower);
    const double left_top = draw(params.left_upper);
    const double right_height = draw(params.right_lower);
    const double right_top = draw(params.right_upper);
    const double x = u(gen);
    const double y = u(gen);
    const double top = left_top + (right_top - left_top) * x;
    const double bottom = (left_top + left_height) + (right_top + right_height - left_top - left_height) * x;
    if (y >= top && y <= bottom) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(samples);
}

}  // namespace rsh::test
