#include "realmut/scan_config.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace realmut {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_value(std::string_view text, int line) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("scan config line " + std::to_string(line) +
                                ": bad value '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

ScanConfig parse_scan_config(std::istream& in, ScanConfig cfg) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("scan config line " + std::to_string(line) +
                                  ": expected key = value");
    }
    const std::string_view key = trim(text.substr(0, eq));
    const std::string_view val = trim(text.substr(eq + 1));
    if (key == "p_min") {
      cfg.p_min = parse_value<double>(val, line);
    } else if (key == "p_max") {
      cfg.p_max = parse_value<double>(val, line);
    } else if (key == "q_min") {
      cfg.q_min = parse_value<double>(val, line);
    } else if (key == "q_max") {
      cfg.q_max = parse_value<double>(val, line);
    } else if (key == "resolution") {
      cfg.resolution = parse_value<std::size_t>(val, line);
    } else if (key == "steps") {
      cfg.steps = parse_value<std::size_t>(val, line);
    } else if (key == "seed") {
      cfg.seed = parse_value<std::uint64_t>(val, line);
    } else {
      throw std::invalid_argument("scan config line " + std::to_string(line) +
                                  ": unknown key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

ScanConfig load_scan_config(const std::string& path, ScanConfig base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scan config: " + path);
  return parse_scan_config(in, base);
}

}  // namespace realmut
