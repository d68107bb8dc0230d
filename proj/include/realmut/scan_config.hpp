#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>

namespace realmut {

struct ScanConfig {
  double p_min = 0.5;
  double p_max = 1.5;
  double q_min = 0.5;
  double q_max = 1.5;
  std::size_t resolution = 3;
  std::size_t steps = 10'000;
  std::uint64_t seed = 0;
};

/// `key = value` lines; blank lines and lines starting with '#' are skipped.
/// Keys not present keep the values already in `base`. Throws
/// std::invalid_argument naming the line on unknown keys or bad values.
ScanConfig parse_scan_config(std::istream& in, ScanConfig base = {});
ScanConfig load_scan_config(const std::string& path, ScanConfig base = {});

}  // namespace realmut
