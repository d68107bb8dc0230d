#include "realmut/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace realmut {

void RenderSpec::validate() const {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("RenderSpec: width and height must be positive");
  }
  if (!(margin_fraction >= 0.0 && margin_fraction < 0.5)) {
    throw std::invalid_argument("RenderSpec: margin_fraction must be in [0, 0.5)");
  }
  if (!(point_radius > 0.0)) {
    throw std::invalid_argument("RenderSpec: point_radius must be positive");
  }
}

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

// Uniform scale from the data bounding box onto the viewport, y pointing up.
class Viewport {
 public:
  Viewport(const RenderSpec& spec, const std::vector<const Coords*>& pts)
      : spec_(spec) {
    double xmin = std::numeric_limits<double>::infinity();
    double ymin = xmin;
    double xmax = -xmin;
    double ymax = -xmin;
    for (const Coords* p : pts) {
      if (!std::isfinite((*p)[0]) || !std::isfinite((*p)[1])) {
        throw std::invalid_argument("render_svg: non-finite coordinate");
      }
      xmin = std::min(xmin, (*p)[0]);
      xmax = std::max(xmax, (*p)[0]);
      ymin = std::min(ymin, (*p)[1]);
      ymax = std::max(ymax, (*p)[1]);
    }
    cx_ = 0.5 * (xmin + xmax);
    cy_ = 0.5 * (ymin + ymax);
    const double span_x = xmax - xmin;
    const double span_y = ymax - ymin;
    const double usable_w = spec.width * (1.0 - 2.0 * spec.margin_fraction);
    const double usable_h = spec.height * (1.0 - 2.0 * spec.margin_fraction);
    double scale = std::numeric_limits<double>::infinity();
    if (span_x > 0.0) scale = std::min(scale, usable_w / span_x);
    if (span_y > 0.0) scale = std::min(scale, usable_h / span_y);
    scale_ = std::isfinite(scale) ? scale : 1.0;
    xmin_ = xmin;
    xmax_ = xmax;
    ymin_ = ymin;
    ymax_ = ymax;
  }

  double px(double x) const { return 0.5 * spec_.width + (x - cx_) * scale_; }
  double py(double y) const { return 0.5 * spec_.height - (y - cy_) * scale_; }

  std::string header() const {
    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
        std::to_string(spec_.width) + "\" height=\"" +
        std::to_string(spec_.height) + "\" viewBox=\"0 0 " +
        std::to_string(spec_.width) + " " + std::to_string(spec_.height) +
        "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (spec_.draw_axes) {
      if (xmin_ <= 0.0 && 0.0 <= xmax_) {
        out += "<line class=\"axis\" x1=\"" + fixed(px(0.0)) + "\" y1=\"0\" x2=\"" +
               fixed(px(0.0)) + "\" y2=\"" + std::to_string(spec_.height) +
               "\" stroke=\"gray\" stroke-width=\"0.5\"/>\n";
      }
      if (ymin_ <= 0.0 && 0.0 <= ymax_) {
        out += "<line class=\"axis\" x1=\"0\" y1=\"" + fixed(py(0.0)) + "\" x2=\"" +
               std::to_string(spec_.width) + "\" y2=\"" + fixed(py(0.0)) +
               "\" stroke=\"gray\" stroke-width=\"0.5\"/>\n";
      }
    }
    return out;
  }

 private:
  const RenderSpec& spec_;
  double cx_ = 0.0;
  double cy_ = 0.0;
  double scale_ = 1.0;
  double xmin_ = 0.0;
  double xmax_ = 0.0;
  double ymin_ = 0.0;
  double ymax_ = 0.0;
};

}  // namespace

std::string render_svg(const std::vector<Coords>& points, const RenderSpec& spec) {
  spec.validate();
  if (points.empty()) throw std::invalid_argument("render_svg: no points");
  std::vector<const Coords*> refs;
  refs.reserve(points.size());
  for (const auto& p : points) refs.push_back(&p);
  const Viewport vp(spec, refs);
  std::string out = vp.header();
  const std::string r = fixed(spec.point_radius);
  for (const auto& p : points) {
    out += "<circle cx=\"" + fixed(vp.px(p[0])) + "\" cy=\"" + fixed(vp.py(p[1])) +
           "\" r=\"" + r + "\" fill=\"black\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_svg(const Orbit& orbit, const RenderSpec& spec) {
  return render_svg(orbit.points, spec);
}

std::string render_svg(const std::vector<Polyline>& lines, const RenderSpec& spec) {
  spec.validate();
  std::vector<const Coords*> refs;
  for (const auto& line : lines) {
    for (const auto& p : line) refs.push_back(&p);
  }
  if (refs.empty()) throw std::invalid_argument("render_svg: no points");
  const Viewport vp(spec, refs);
  std::string out = vp.header();
  for (const auto& line : lines) {
    if (line.empty()) continue;
    out += "<path d=\"";
    for (std::size_t i = 0; i < line.size(); ++i) {
      out += i == 0 ? "M" : " L";
      out += fixed(vp.px(line[i][0])) + " " + fixed(vp.py(line[i][1]));
    }
    if (line.size() > 2 && line.front() == line.back()) out += " Z";
    out += "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace realmut
