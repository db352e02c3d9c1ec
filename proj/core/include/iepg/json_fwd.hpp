#pragma once

#if defined(IEPG_VENDORED_JSON)
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

namespace iepg {
using Json = nlohmann::json;
}
