#pragma once

// JSON file formats. Canonical form is nlohmann's two-space dump with keys
// in lexicographic order and a trailing newline; parse followed by serialize
// reproduces a canonical file byte for byte.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dynaflow/model.hpp"

namespace dynaflow {

using json = nlohmann::json;

/// Malformed input (bad JSON, wrong field types, unknown ids).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PathInstance instance_from_json(const json& j);
json instance_to_json(const PathInstance& inst);

PackingInstance packing_instance_from_json(const json& j);
json packing_instance_to_json(const PackingInstance& inst);

Packing packing_from_json(const json& j, const PackingInstance& inst);
json packing_to_json(const Packing& p, const PackingInstance& inst,
                     std::optional<std::int64_t> objective = std::nullopt);

Schedule schedule_from_json(const json& j, const PathInstance& inst);
json schedule_to_json(const Schedule& s, const PathInstance& inst);

json lower_bound_report(const Rational& bound, bool reduced_tau);

json parse_json(std::string_view text);
std::string dump_canonical(const json& j);

/// Reads a whole file, or stdin when `path` is "-".
std::string read_text(const std::string& path);
/// Writes a whole file, or stdout when `path` is "-".
void write_text(const std::string& path, std::string_view text);

}  // namespace dynaflow
