#pragma once

#include <string_view>
#include <variant>

namespace rsh {

/// Closed-open sampling interval [lo, hi).
struct Range {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

/// Random Shadows and Highlights hyperparameters. Edge ranges are fractions
/// of the image height; factor ranges are multiplicative brightness factors.
/// Defaults are the published experiment settings; p defaults to the 0.5
/// training probability.
struct RshParams {
  double p = 0.5;
  Range highlight_range{1.0, 2.0};
  Range shadow_range{0.0, 1.0};
  Range left_upper{0.0, 0.3};
  Range left_lower{0.4, 0.8};
  Range right_upper{0.0, 0.3};
  Range right_lower{0.4, 0.8};

  friend bool operator==(const RshParams&, const RshParams&) = default;
};

struct GammaParams {
  double p = 0.5;
  Range gamma_range{0.0, 1.5};

  friend bool operator==(const GammaParams&, const GammaParams&) = default;
};

/// Hue range is a fraction of a full turn of the colour wheel.
struct JitterParams {
  double p = 0.5;
  Range brightness_range{0.0, 2.0};
  Range contrast_range{0.0, 2.0};
  Range saturation_range{0.0, 2.0};
  Range hue_range{-0.5, 0.5};

  friend bool operator==(const JitterParams&, const JitterParams&) = default;
};

/// Disk illumination stand-in: radius is a fraction of min(W, H).
struct DiskParams {
  double p = 0.5;
  Range radius_range{0.25, 0.75};
  Range factor_range{0.0, 2.0};

  friend bool operator==(const DiskParams&, const DiskParams&) = default;
};

enum class Op { none, rsh, gamma, jitter, disk };

std::string_view to_string(Op op) noexcept;
/// Throws InvalidArgument for unknown names.
Op parse_op(std::string_view name);

using OpParams = std::variant<std::monostate, RshParams, GammaParams, JitterParams, DiskParams>;

Op op_of(const OpParams& params) noexcept;
OpParams default_params(Op op);

/// Gating probability of the parameter set (0 for Op::none).
double gating_probability(const OpParams& params) noexcept;
void set_gating_probability(OpParams& params, double p) noexcept;

// Validators return their argument unchanged or throw Error naming the field.
const RshParams& validate(const RshParams& params);
const GammaParams& validate(const GammaParams& params);
const JitterParams& validate(const JitterParams& params);
const DiskParams& validate(const DiskParams& params);
const OpParams& validate(const OpParams& params);

}  // namespace rsh
