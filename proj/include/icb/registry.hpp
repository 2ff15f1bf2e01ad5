#pragma once

// Named constraint schemas: "empty", "submod", "fano-even", "fano-odd", and
// '+'-joined disjoint unions of these (left-associative).

#include <string>
#include <string_view>
#include <vector>

#include "icb/schema.hpp"

namespace icb {

ConstraintSchema schema_by_name(std::string_view name);
std::vector<std::string> known_schema_names();

}  // namespace icb
