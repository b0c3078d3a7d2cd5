#pragma once

#include <string>
#include <vector>

#include "gi/instance.hpp"

namespace gi {

/// Text format, one record per line, '#' starts a comment:
///   gi <n> <m> <|C|> <s> <t>
///   p <color> <x> <y> <z>        (optional color positions)
///   v <id> <color>...            (vertices without colors may be omitted)
///   e <u> <v> <weight>
/// Duplicate edges collapse to the minimum weight with a warning.
InspectionInstance parse_instance(const std::string& text,
                                  std::vector<std::string>* warnings = nullptr);

std::string write_instance(const InspectionInstance& inst);

InspectionInstance load_instance_file(const std::string& path,
                                      std::vector<std::string>* warnings = nullptr);
void save_instance_file(const InspectionInstance& inst, const std::string& path);

/// FNV-1a over the canonical serialization; used for provenance records.
uint64_t instance_hash(const InspectionInstance& inst);
uint64_t fnv1a(const std::string& data);

}  // namespace gi
