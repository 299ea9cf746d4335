#pragma once

#include <nlohmann/json.hpp>

namespace mta {

// Insertion-ordered so serialized keys follow the documented schemas.
using Json = nlohmann::ordered_json;

}  // namespace mta
