#include "realmut/export.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace realmut {

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

char sign_char(Sign s) { return to_char(s); }

// JSON has no literals for non-finite numbers.
std::string json_number(double x) {
  return std::isfinite(x) ? format_double(x) : "null";
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_pair(const std::array<double, 2>& v) {
  return "[" + json_number(v[0]) + "," + json_number(v[1]) + "]";
}

}  // namespace

std::string export_csv(const Orbit& orbit) {
  const bool trop = orbit.kind == OrbitKind::Tropical;
  std::string out = trop ? "step,s,t,phi\n" : "step,x,y\n";
  for (std::size_t i = 0; i < orbit.points.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(orbit.points[i][0]);
    out += ',';
    out += format_double(orbit.points[i][1]);
    if (trop) {
      out += ',';
      out += format_double(*orbit.diagnostics[i].phi);
    }
    out += '\n';
  }
  return out;
}

std::string export_json(const Orbit& orbit) {
  std::string out = "{\"params\":{\"p\":" + json_number(orbit.params.p()) +
                    ",\"q\":" + json_number(orbit.params.q()) + "}";
  out += ",\"kind\":" + json_string(to_string(orbit.kind));
  out += ",\"start\":" + json_pair(orbit.start);
  out += ",\"points\":[";
  for (std::size_t i = 0; i < orbit.points.size(); ++i) {
    if (i) out += ',';
    out += json_pair(orbit.points[i]);
  }
  out += "],\"diagnostics\":[";
  for (std::size_t i = 0; i < orbit.diagnostics.size(); ++i) {
    const auto& d = orbit.diagnostics[i];
    if (i) out += ',';
    out += '{';
    if (d.phi) out += "\"phi\":" + json_number(*d.phi) + ",";
    out += "\"radius\":" + json_number(d.radius);
    out += ",\"log_radius\":" + json_number(d.log_radius);
    if (d.polar_angle) out += ",\"polar_angle\":" + json_number(*d.polar_angle);
    out += ",\"sign\":\"";
    out += sign_char(d.sign.first);
    out += sign_char(d.sign.second);
    out += "\"}";
  }
  out += ']';
  if (orbit.truncation) {
    out += ",\"truncation\":{\"step\":" + std::to_string(orbit.truncation->step) +
           ",\"reason\":" + json_string(orbit.truncation->reason) + "}";
  }
  out += "}\n";
  return out;
}

std::string export_json(const ScanTable& table) {
  std::string out = "{\"kind\":" + json_string(to_string(table.kind));
  out += ",\"resolution\":" + std::to_string(table.resolution);
  out += ",\"steps\":" + std::to_string(table.steps);
  out += ",\"cells\":[";
  for (std::size_t k = 0; k < table.cells.size(); ++k) {
    const auto& c = table.cells[k];
    if (k) out += ',';
    out += "{\"i\":" + std::to_string(c.i) + ",\"j\":" + std::to_string(c.j) +
           ",\"p\":" + json_number(c.p) + ",\"q\":" + json_number(c.q) +
           ",\"verdict\":" + json_string(verdict_name(c.verdict)) +
           ",\"value\":" + json_number(verdict_value(c.verdict)) + "}";
  }
  out += "]}\n";
  return out;
}

std::string export_json(const MutationClassResult& result) {
  std::string out = "{\"complete\":";
  out += result.complete ? "true" : "false";
  out += ",\"stop\":" + json_string(to_string(result.stop));
  out += ",\"size\":" + std::to_string(result.matrices.size());
  out += ",\"matrices\":[";
  for (std::size_t k = 0; k < result.matrices.size(); ++k) {
    const auto& m = result.matrices[k];
    if (k) out += ',';
    out += "{\"top\":[" + json_pair(m.top()[0]) + "," + json_pair(m.top()[1]) +
           "],\"rows\":[";
    for (std::size_t r = 0; r < m.rows().size(); ++r) {
      if (r) out += ',';
      out += json_pair(m.rows()[r]);
    }
    out += "]}";
  }
  out += "]}\n";
  return out;
}

ScanTable parse_scan_table_json(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    ScanTable table;
    const std::string kind = doc.at("kind").get<std::string>();
    if (kind == "rational") {
      table.kind = OrbitKind::Rational;
    } else if (kind == "tropical") {
      table.kind = OrbitKind::Tropical;
    } else {
      throw std::invalid_argument("unknown orbit kind: " + kind);
    }
    table.resolution = doc.at("resolution").get<std::size_t>();
    table.steps = doc.at("steps").get<std::size_t>();
    for (const auto& c : doc.at("cells")) {
      const std::string name = c.at("verdict").get<std::string>();
      const double value = c.at("value").get<double>();
      GrowthVerdict v;
      if (name == "bounded_like") {
        v = BoundedLike{value};
      } else if (name == "linear") {
        v = Linear{value};
      } else if (name == "exponential") {
        v = Exponential{value};
      } else {
        throw std::invalid_argument("unknown verdict: " + name);
      }
      table.cells.push_back({c.at("i").get<std::size_t>(),
                             c.at("j").get<std::size_t>(),
                             c.at("p").get<double>(), c.at("q").get<double>(), v});
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("scan table JSON: ") + e.what());
  }
}

}  // namespace realmut
