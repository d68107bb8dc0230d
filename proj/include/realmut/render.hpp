#pragma once

#include <string>
#include <vector>

#include "realmut/orbit.hpp"

namespace realmut {

struct RenderSpec {
  int width = 640;
  int height = 480;
  double margin_fraction = 0.05;  // in [0, 0.5)
  double point_radius = 2.0;
  bool draw_axes = true;

  void validate() const;  // throws std::invalid_argument
};

using Polyline = std::vector<Coords>;

/// Orbit points as circles.
std::string render_svg(const Orbit& orbit, const RenderSpec& spec = {});
std::string render_svg(const std::vector<Coords>& points,
                       const RenderSpec& spec = {});

/// Polylines as paths; a polyline whose ends coincide is closed with Z.
std::string render_svg(const std::vector<Polyline>& lines,
                       const RenderSpec& spec = {});

}  // namespace realmut
