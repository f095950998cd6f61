#pragma once

// Small JSON Schema subset, enough for the report schema: type, required,
// properties, additionalProperties (boolean), items, enum, const, minimum
// and local $ref into $defs.

#include <string>
#include <vector>

#include "json.hpp"

namespace koszul::cli {

/// One message per violation, prefixed with a JSON pointer. Empty when valid.
std::vector<std::string> schema_errors(const nlohmann::ordered_json& doc,
                                       const nlohmann::ordered_json& schema);

/// Reads a schema file; throws io_error.
nlohmann::ordered_json load_schema(const std::string& path);

}  // namespace koszul::cli
