#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rsh/params.hpp"

namespace rsh {

/// Parameter file: one JSON object keyed by op name ("rsh", "gamma",
/// "jitter", "disk"). Omitted fields keep their defaults; unknown keys and
/// invalid values throw BadConfig (or the validation code) naming the field,
/// e.g. "rsh.shadow_range".
OpParams parse_config(std::string_view json_text, Op op);
OpParams load_config(const std::filesystem::path& path, Op op);

/// JSON object with every field of the parameter set.
std::string params_to_json(const OpParams& params, int indent = -1);

/// Config document holding the defaults for every op.
std::string default_config_json(int indent = 2);

}  // namespace rsh
