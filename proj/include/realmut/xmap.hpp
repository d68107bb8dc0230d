#pragma once

#include <functional>

#include "realmut/params.hpp"

namespace realmut {

/// A point of the open positive quadrant, the state of the rational map.
class PointPos {
 public:
  PointPos(double x, double y);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  friend bool operator==(const PointPos&, const PointPos&) = default;

 private:
  double x_;
  double y_;
};

/// The same state in the coordinates (u, v) = (x^p, y^2).
class UVPoint {
 public:
  UVPoint(double u, double v);

  double u() const noexcept { return u_; }
  double v() const noexcept { return v_; }

 private:
  double u_;
  double v_;
};

enum class UVRegion { I, II, III, BoundaryC1, BoundaryC2 };

const char* to_string(UVRegion r) noexcept;

// Rational mutations. Every map throws RangeError when a coordinate leaves
// the representable positive reals.
PointPos mu1_x(const Params& params, const PointPos& pt);
PointPos mu2_x(const Params& params, const PointPos& pt);
PointPos mu_x(const Params& params, const PointPos& pt);      // mu2 o mu1
PointPos mu_x_inv(const Params& params, const PointPos& pt);  // mu1 o mu2

/// mu evaluated from its single closed formula rather than by composition.
PointPos mu_x_closed(const Params& params, const PointPos& pt);

UVPoint to_uv(const Params& params, const PointPos& pt);
PointPos from_uv(const Params& params, const UVPoint& uv);

UVPoint mu1_uv(const Params& params, const UVPoint& uv);
UVPoint mu2_uv(const Params& params, const UVPoint& uv);
UVPoint mu_uv(const Params& params, const UVPoint& uv);

/// Which wedge of the (u, v) quadrant the point lies in, relative to the
/// fixed-point curves C1: u = (1 + v^{q/2})^{p/2} and C2: v = 1 + u.
/// III is above C2, II is right of C1, I is between them. Only meaningful
/// for pq >= 4.
UVRegion region_uv(const Params& params, const UVPoint& uv,
                   const Tolerances& tol = {});

/// Horizontal gap between C1 and C2 at height v (v >= 1).
double H_dist(const Params& params, double v, const Tolerances& tol = {});
/// Vertical gap between C2 and C1 above abscissa u (u >= 1).
double V_dist(const Params& params, double u, const Tolerances& tol = {});

struct FixedCurves {
  double c1_x;  // sqrt(1 + coord^q): x on C1 at height y = coord
  double c2_y;  // sqrt(1 + coord^p): y on C2 at abscissa x = coord
};

FixedCurves fixed_curves(const Params& params, double coord);

using PositiveMap = std::function<PointPos(const PointPos&)>;

/// |det J - 1| for the map conjugated into log coordinates, J taken by
/// central differences with step `step` around (log x, log y).
double log_jacobian_residual(const PositiveMap& map, const PointPos& pt,
                             double step);

double symplectic_residual_x(const Params& params, const PointPos& pt,
                             double jac_step = Tolerances{}.jac_step());

}  // namespace realmut
