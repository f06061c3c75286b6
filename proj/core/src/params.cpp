#include "rsh/params.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "rsh/error.hpp"

namespace rsh {
namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

void check_probability(double p, const std::string& field) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::BadProbability,
                field + ": probability " + fmt(p) + " is outside [0, 1]", field);
  }
}

void check_finite(const Range& r, const std::string& field) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw Error(ErrorCode::BadConfig, field + ": bounds must be finite", field);
  }
}

void check_ordered(const Range& r, const std::string& field) {
  check_finite(r, field);
  if (r.lo > r.hi) {
    throw Error(ErrorCode::RangeInverted,
                field + ": lower bound " + fmt(r.lo) + " exceeds upper bound " + fmt(r.hi), field);
  }
}

// Factor and edge ranges: 0 <= lo <= hi.
void check_nonnegative(const Range& r, const std::string& field) {
  check_ordered(r, field);
  if (r.lo < 0.0) {
    throw Error(ErrorCode::NegativeFactor,
                field + ": lower bound " + fmt(r.lo) + " must not be negative", field);
  }
}

}  // namespace

std::string_view to_string(Op op) noexcept {
  switch (op) {
    case Op::none: return "none";
    case Op::rsh: return "rsh";
    case Op::gamma: return "gamma";
    case Op::jitter: return "jitter";
    case Op::disk: return "disk";
  }
  return "none";
}

Op parse_op(std::string_view name) {
  for (Op op : {Op::none, Op::rsh, Op::gamma, Op::jitter, Op::disk}) {
    if (to_string(op) == name) return op;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown op '" + std::string(name) + "' (expected rsh, gamma, jitter, disk or none)",
              "op");
}

Op op_of(const OpParams& params) noexcept {
  return static_cast<Op>(params.index());
}

OpParams default_params(Op op) {
  switch (op) {
    case Op::none: return std::monostate{};
    case Op::rsh: return RshParams{};
    case Op::gamma: return GammaParams{};
    case Op::jitter: return JitterParams{};
    case Op::disk: return DiskParams{};
  }
  return std::monostate{};
}

double gating_probability(const OpParams& params) noexcept {
  return std::visit(
      [](const auto& p) -> double {
        if constexpr (requires { p.p; }) {
          return p.p;
        } else {
          return 0.0;
        }
      },
      params);
}

void set_gating_probability(OpParams& params, double p) noexcept {
  std::visit(
      [p](auto& params) {
        if constexpr (requires { params.p; }) params.p = p;
      },
      params);
}

const RshParams& validate(const RshParams& params) {
  check_probability(params.p, "rsh.p");
  check_nonnegative(params.highlight_range, "rsh.highlight_range");
  check_nonnegative(params.shadow_range, "rsh.shadow_range");
  check_nonnegative(params.left_upper, "rsh.left_upper");
  check_nonnegative(params.left_lower, "rsh.left_lower");
  check_nonnegative(params.right_upper, "rsh.right_upper");
  check_nonnegative(params.right_lower, "rsh.right_lower");
  return params;
}

const GammaParams& validate(const GammaParams& params) {
  check_probability(params.p, "gamma.p");
  check_nonnegative(params.gamma_range, "gamma.gamma_range");
  return params;
}

const JitterParams& validate(const JitterParams& params) {
  check_probability(params.p, "jitter.p");
  check_nonnegative(params.brightness_range, "jitter.brightness_range");
  check_nonnegative(params.contrast_range, "jitter.contrast_range");
  check_nonnegative(params.saturation_range, "jitter.saturation_range");
  check_ordered(params.hue_range, "jitter.hue_range");
  if (params.hue_range.lo < -0.5 || params.hue_range.hi > 0.5) {
    throw Error(ErrorCode::BadConfig, "jitter.hue_range: bounds must lie within [-0.5, 0.5]",
                "jitter.hue_range");
  }
  return params;
}

const DiskParams& validate(const DiskParams& params) {
  check_probability(params.p, "disk.p");
  check_nonnegative(params.radius_range, "disk.radius_range");
  check_nonnegative(params.factor_range, "disk.factor_range");
  return params;
}

const OpParams& validate(const OpParams& params) {
  std::visit(
      [](const auto& p) {
        if constexpr (!std::is_same_v<std::decay_t<decltype(p)>, std::monostate>) validate(p);
      },
      params);
  return params;
}

}  // namespace rsh
