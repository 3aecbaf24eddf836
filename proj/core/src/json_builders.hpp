#pragma once

// Internal JSON builders shared across modules; public headers stay free
// of the JSON dependency.

#include <json.hpp>

#include "netmode/classification.hpp"

namespace netmode::detail {

nlohmann::json report_to_json(const ControlReport& report);
nlohmann::json component_to_json(const AlternatingComponent& component);

}  // namespace netmode::detail
