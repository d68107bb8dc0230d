#pragma once

#include <string>
#include <string_view>

#include "realmut/matrix_mutation.hpp"
#include "realmut/orbit.hpp"

namespace realmut {

/// Shortest decimal that round-trips to the same double; -0 prints as 0.
std::string format_double(double x);

std::string export_csv(const Orbit& orbit);

std::string export_json(const Orbit& orbit);
std::string export_json(const ScanTable& table);
std::string export_json(const MutationClassResult& result);

/// Inverse of export_json(ScanTable). Throws std::invalid_argument.
ScanTable parse_scan_table_json(std::string_view text);

}  // namespace realmut
