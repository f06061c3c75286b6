#include "rsh/config.hpp"

#include <functional>
#include <map>
#include <string>

#include "params_json.hpp"
#include "rsh/error.hpp"
#include "rsh/imgio.hpp"

namespace rsh {

namespace detail {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json range_json(const Range& r) { return ordered_json::array({r.lo, r.hi}); }

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::BadConfig, field + ": " + what, field);
}

double read_number(const json& v, const std::string& field) {
  if (!v.is_number()) bad(field, "expected a number");
  return v.get<double>();
}

Range read_range(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) bad(field, "expected an array [lo, hi]");
  return {read_number(v[0], field), read_number(v[1], field)};
}

// Field table: key -> setter. Any key not in the table is rejected.
template <typename P>
using Fields = std::map<std::string, std::function<void(P&, const json&, const std::string&)>>;

template <typename P>
auto prob_field() {
  return [](P& p, const json& v, const std::string& f) { p.p = read_number(v, f); };
}

template <typename P>
auto range_field(Range P::*member) {
  return [member](P& p, const json& v, const std::string& f) { p.*member = read_range(v, f); };
}

template <typename P>
P read_object(const json& value, std::string_view op, const Fields<P>& fields) {
  if (!value.is_object()) bad(std::string(op), "expected an object");
  P params{};
  for (const auto& [key, v] : value.items()) {
    const std::string field = std::string(op) + "." + key;
    auto it = fields.find(key);
    if (it == fields.end()) bad(field, "unknown key");
    it->second(params, v, field);
  }
  validate(params);
  return params;
}

}  // namespace

ordered_json params_to_json_value(const OpParams& params) {
  return std::visit(
      [](const auto& p) -> ordered_json {
        using T = std::decay_t<decltype(p)>;
        ordered_json out = ordered_json::object();
        if constexpr (std::is_same_v<T, RshParams>) {
          out["p"] = p.p;
          out["highlight_range"] = range_json(p.highlight_range);
          out["shadow_range"] = range_json(p.shadow_range);
          out["left_upper"] = range_json(p.left_upper);
          out["left_lower"] = range_json(p.left_lower);
          out["right_upper"] = range_json(p.right_upper);
          out["right_lower"] = range_json(p.right_lower);
        } else if constexpr (std::is_same_v<T, GammaParams>) {
          out["p"] = p.p;
          out["gamma_range"] = range_json(p.gamma_range);
        } else if constexpr (std::is_same_v<T, JitterParams>) {
          out["p"] = p.p;
          out["brightness_range"] = range_json(p.brightness_range);
          out["contrast_range"] = range_json(p.contrast_range);
          out["saturation_range"] = range_json(p.saturation_range);
          out["hue_range"] = range_json(p.hue_range);
        } else if constexpr (std::is_same_v<T, DiskParams>) {
          out["p"] = p.p;
          out["radius_range"] = range_json(p.radius_range);
          out["factor_range"] = range_json(p.factor_range);
        }
        return out;
      },
      params);
}

OpParams params_from_json_value(const json& value, Op op) {
  switch (op) {
    case Op::none:
      if (!value.is_object() || !value.empty()) bad("none", "op 'none' takes no parameters");
      return std::monostate{};
    case Op::rsh:
      return read_object<RshParams>(
          value, "rsh",
          {{"p", prob_field<RshParams>()},
           {"highlight_range", range_field(&RshParams::highlight_range)},
           {"shadow_range", range_field(&RshParams::shadow_range)},
           {"left_upper", range_field(&RshParams::left_upper)},
           {"left_lower", range_field(&RshParams::left_lower)},
           {"right_upper", range_field(&RshParams::right_upper)},
           {"right_lower", range_field(&RshParams::right_lower)}});
    case Op::gamma:
      return read_object<GammaParams>(value, "gamma",
                                      {{"p", prob_field<GammaParams>()},
                                       {"gamma_range", range_field(&GammaParams::gamma_range)}});
    case Op::jitter:
      return read_object<JitterParams>(
          value, "jitter",
          {{"p", prob_field<JitterParams>()},
           {"brightness_range", range_field(&JitterParams::brightness_range)},
           {"contrast_range", range_field(&JitterParams::contrast_range)},
           {"saturation_range", range_field(&JitterParams::saturation_range)},
           {"hue_range", range_field(&JitterParams::hue_range)}});
    case Op::disk:
      return read_object<DiskParams>(value, "disk",
                                     {{"p", prob_field<DiskParams>()},
                                      {"radius_range", range_field(&DiskParams::radius_range)},
                                      {"factor_range", range_field(&DiskParams::factor_range)}});
  }
  bad("op", "unknown op");
}

}  // namespace detail

OpParams parse_config(std::string_view json_text, Op op) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::BadConfig, "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "rsh" && key != "gamma" && key != "jitter" && key != "disk") {
      throw Error(ErrorCode::BadConfig, key + ": unknown op section", key);
    }
    // Every section is checked, not only the selected op.
    detail::params_from_json_value(value, parse_op(key));
  }
  if (op == Op::none) return std::monostate{};
  const auto it = doc.find(std::string(to_string(op)));
  if (it == doc.end()) return default_params(op);
  return detail::params_from_json_value(*it, op);
}

OpParams load_config(const std::filesystem::path& path, Op op) {
  const auto bytes = read_file(path);
  return parse_config(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                      op);
}

std::string params_to_json(const OpParams& params, int indent) {
  return detail::params_to_json_value(params).dump(indent);
}

std::string default_config_json(int indent) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (Op op : {Op::rsh, Op::gamma, Op::jitter, Op::disk}) {
    doc[std::string(to_string(op))] = detail::params_to_json_value(default_params(op));
  }
  return doc.dump(indent);
}

}  // namespace rsh
