#pragma once

#include <string>

#include "socnav/scene/types.hpp"

namespace socnav::scene {

// Schema version accepted by the reader; see docs/schema.md.
constexpr int kSchemaVersion = 2;

// Parses a schema-v2 scenario document. Unknown keys are ignored. Throws
// Error(Schema) with a JSON-pointer-style path on malformed input or on a
// document that violates the scenario invariants, Error(VersionMismatch) on
// a wrong "version" field.
Scenario parse_scenario(const std::string& text);

// Reads and parses a scenario file.
Scenario load_scenario(const std::string& path);

// Serializes a scenario back to the schema-v2 layout. parse(serialize(s))
// reproduces every field.
std::string serialize_scenario(const Scenario& s);

void save_scenario(const Scenario& s, const std::string& path);

}  // namespace socnav::scene
