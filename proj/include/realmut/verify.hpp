#pragma once

#include <cstdint>
#include <ostream>

namespace realmut {

/// Randomized property checks over every module, one line per suite.
/// Returns true iff every suite passes.
bool run_property_suites(std::ostream& out, std::uint64_t seed = 0);

}  // namespace realmut
