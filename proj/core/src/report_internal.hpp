#pragma once

#include <json.hpp>

#include "leapsim/memsim.hpp"

namespace leapsim {

nlohmann::ordered_json report_json_object(const SimReport& report);

}  // namespace leapsim
