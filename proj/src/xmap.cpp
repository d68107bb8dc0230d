#include "realmut/xmap.hpp"

#include <array>
#include <cmath>
#include <string>

#include "realmut/detail/numeric.hpp"
#include "realmut/errors.hpp"

namespace realmut {

using detail::real_pow;

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

PointPos make_point(double x, double y, const char* where) {
  if (!positive_finite(x) || !positive_finite(y)) {
    throw RangeError(std::string(where) +
                     ": result left the representable positive quadrant");
  }
  return PointPos(x, y);
}

UVPoint make_uv(double u, double v, const char* where) {
  if (!positive_finite(u) || !positive_finite(v)) {
    throw RangeError(std::string(where) +
                     ": result left the representable positive quadrant");
  }
  return UVPoint(u, v);
}

void require_not_subcritical(const Params& params, const Tolerances& tol,
                             const char* where) {
  if (classify_regime(params, tol) == Regime::SubCritical) {
    throw RegimeError(std::string(where) + ": requires pq >= 4");
  }
}

}  // namespace

PointPos::PointPos(double x, double y) : x_(x), y_(y) {
  if (!positive_finite(x) || !positive_finite(y)) {
    throw DomainError("PointPos: coordinates must be finite and positive");
  }
}

UVPoint::UVPoint(double u, double v) : u_(u), v_(v) {
  if (!positive_finite(u) || !positive_finite(v)) {
    throw DomainError("UVPoint: coordinates must be finite and positive");
  }
}

const char* to_string(UVRegion r) noexcept {
  switch (r) {
    case UVRegion::I:
      return "I";
    case UVRegion::II:
      return "II";
    case UVRegion::III:
      return "III";
    case UVRegion::BoundaryC1:
      return "C1";
    case UVRegion::BoundaryC2:
      return "C2";
  }
  return "?";
}

PointPos mu1_x(const Params& params, const PointPos& pt) {
  const double x = (1.0 + real_pow(pt.y(), params.q())) / pt.x();
  return make_point(x, pt.y(), "mu1_x");
}

PointPos mu2_x(const Params& params, const PointPos& pt) {
  const double y = (1.0 + real_pow(pt.x(), params.p())) / pt.y();
  return make_point(pt.x(), y, "mu2_x");
}

PointPos mu_x(const Params& params, const PointPos& pt) {
  return mu2_x(params, mu1_x(params, pt));
}

PointPos mu_x_inv(const Params& params, const PointPos& pt) {
  return mu1_x(params, mu2_x(params, pt));
}

PointPos mu_x_closed(const Params& params, const PointPos& pt) {
  const double a = 1.0 + real_pow(pt.y(), params.q());
  const double xp = real_pow(pt.x(), params.p());
  const double x = a / pt.x();
  const double y = (xp + real_pow(a, params.p())) / (xp * pt.y());
  return make_point(x, y, "mu_x_closed");
}

UVPoint to_uv(const Params& params, const PointPos& pt) {
  return make_uv(real_pow(pt.x(), params.p()), pt.y() * pt.y(), "to_uv");
}

PointPos from_uv(const Params& params, const UVPoint& uv) {
  return make_point(real_pow(uv.u(), 1.0 / params.p()), std::sqrt(uv.v()),
                    "from_uv");
}

UVPoint mu1_uv(const Params& params, const UVPoint& uv) {
  const double w = 1.0 + real_pow(uv.v(), params.q() / 2.0);
  return make_uv(real_pow(w, params.p()) / uv.u(), uv.v(), "mu1_uv");
}

UVPoint mu2_uv(const Params&, const UVPoint& uv) {
  const double w = 1.0 + uv.u();
  return make_uv(uv.u(), w * w / uv.v(), "mu2_uv");
}

UVPoint mu_uv(const Params& params, const UVPoint& uv) {
  return mu2_uv(params, mu1_uv(params, uv));
}

UVRegion region_uv(const Params& params, const UVPoint& uv,
                   const Tolerances& tol) {
  require_not_subcritical(params, tol, "region_uv");
  const double u = uv.u();
  const double v = uv.v();
  const double c2_v = 1.0 + u;
  const double c1_u =
      real_pow(1.0 + real_pow(v, params.q() / 2.0), params.p() / 2.0);
  const double eps = tol.eq_tol();
  if (std::abs(v - c2_v) <= eps * std::max(1.0, c2_v)) {
    return UVRegion::BoundaryC2;
  }
  if (std::abs(u - c1_u) <= eps * std::max(1.0, c1_u)) {
    return UVRegion::BoundaryC1;
  }
  if (v > c2_v) return UVRegion::III;
  if (u > c1_u) return UVRegion::II;
  return UVRegion::I;
}

double H_dist(const Params& params, double v, const Tolerances& tol) {
  require_not_subcritical(params, tol, "H_dist");
  if (!(v >= 1.0)) throw DomainError("H_dist: requires v >= 1");
  return real_pow(1.0 + real_pow(v, params.q() / 2.0), params.p() / 2.0) - v +
         1.0;
}

double V_dist(const Params& params, double u, const Tolerances& tol) {
  require_not_subcritical(params, tol, "V_dist");
  if (!(u >= 1.0)) throw DomainError("V_dist: requires u >= 1");
  return 1.0 + u -
         real_pow(real_pow(u, 2.0 / params.p()) - 1.0, 2.0 / params.q());
}

FixedCurves fixed_curves(const Params& params, double coord) {
  if (!(coord > 0.0)) throw DomainError("fixed_curves: requires coord > 0");
  return {std::sqrt(1.0 + real_pow(coord, params.q())),
          std::sqrt(1.0 + real_pow(coord, params.p()))};
}

double log_jacobian_residual(const PositiveMap& map, const PointPos& pt,
                             double step) {
  if (!(step > 0.0)) throw DomainError("jacobian step must be positive");
  const double a = std::log(pt.x());
  const double b = std::log(pt.y());
  auto probe = [&](double da, double db) {
    const double x = std::exp(a + da);
    const double y = std::exp(b + db);
    if (!positive_finite(x) || !positive_finite(y)) {
      throw RangeError("jacobian probe left the positive quadrant");
    }
    const PointPos img = map(PointPos(x, y));
    return std::array<double, 2>{std::log(img.x()), std::log(img.y())};
  };
  const auto ap = probe(step, 0.0);
  const auto am = probe(-step, 0.0);
  const auto bp = probe(0.0, step);
  const auto bm = probe(0.0, -step);
  const double h2 = 2.0 * step;
  const double j00 = (ap[0] - am[0]) / h2;
  const double j10 = (ap[1] - am[1]) / h2;
  const double j01 = (bp[0] - bm[0]) / h2;
  const double j11 = (bp[1] - bm[1]) / h2;
  return std::abs(j00 * j11 - j01 * j10 - 1.0);
}

double symplectic_residual_x(const Params& params, const PointPos& pt,
                             double jac_step) {
  return log_jacobian_residual(
      [&params](const PointPos& z) { return mu_x(params, z); }, pt, jac_step);
}

}  // namespace realmut
