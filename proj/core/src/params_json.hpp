#pragma once

// JSON mapping for parameter sets; private to the core library.

#include <string>

#include <json.hpp>

#include "rsh/params.hpp"

namespace rsh::detail {

nlohmann::ordered_json params_to_json_value(const OpParams& params);

/// Strict: unknown keys, wrong types and malformed ranges throw BadConfig
/// naming "<op>.<field>". Missing keys keep defaults. Validates the result.
OpParams params_from_json_value(const nlohmann::json& value, Op op);

}  // namespace rsh::detail
