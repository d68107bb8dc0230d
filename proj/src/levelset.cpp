#include "realmut/levelset.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "realmut/errors.hpp"

namespace realmut {

namespace {

using std::numbers::pi;

Coords lerp(const Coords& a, const Coords& b, double w) {
  return {a[0] + (b[0] - a[0]) * w, a[1] + (b[1] - a[1]) * w};
}

double sup_norm(const Coords& c) { return std::max(std::abs(c[0]), std::abs(c[1])); }

// Quadrant piece on which the quadratic form is positive along every ray.
// `form_sign` is +1 for f and -1 for g (the sign of the st coefficient).
Polyline ray_piece(const Params& params, double c, double form_sign,
                   double from, double to, const Coords& first,
                   const Coords& last, int samples) {
  Polyline out;
  out.reserve(samples);
  out.push_back(first);
  const double p = params.p();
  const double q = params.q();
  for (int k = 1; k + 1 < samples; ++k) {
    const double a = from + (to - from) * k / (samples - 1);
    const double cs = std::cos(a);
    const double sn = std::sin(a);
    const double form = p * cs * cs + form_sign * p * q * cs * sn + q * sn * sn;
    const double r = std::sqrt(c / form);
    out.push_back({r * cs, r * sn});
  }
  out.push_back(last);
  return out;
}

Polyline segment(const Coords& a, const Coords& b, int samples) {
  Polyline out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    out.push_back(k + 1 == samples ? b : lerp(a, b, double(k) / (samples - 1)));
  }
  return out;
}

// Largest parameter in [0, hi] at which `norm_at` stays within extent,
// assuming it increases with the parameter.
template <class F>
double clip_parameter(F norm_at, double extent) {
  double lo = 0.0;
  double hi = 1.0;
  while (norm_at(hi) < extent) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (norm_at(mid) < extent ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

std::vector<Polyline> levelset_points(const Params& params, double c,
                                      int samples_per_piece,
                                      std::optional<double> extent,
                                      const Tolerances& tol) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("levelset_points: level must be positive");
  }
  if (samples_per_piece < 2) {
    throw std::invalid_argument("levelset_points: samples_per_piece must be >= 2");
  }
  const double p = params.p();
  const double q = params.q();
  const double sa = std::sqrt(c / p);  // s-axis crossing
  const double ta = std::sqrt(c / q);  // t-axis crossing
  const double ext = extent.value_or(4.0 * std::max(sa, ta));
  if (!(ext > 0.0)) throw DomainError("levelset_points: extent must be positive");

  const Coords e_pos{sa, 0.0};
  const Coords n_pos{0.0, ta};
  const Coords w_pos{-sa, 0.0};
  const Coords s_pos{0.0, -ta};
  const int n = samples_per_piece;
  const Regime regime = classify_regime(params, tol);

  std::vector<Polyline> out;
  if (regime == Regime::Critical) {
    // Every piece is a line: f and g are perfect squares at pq = 4.
    out.push_back(segment(e_pos, n_pos, n));
    out.push_back(segment(n_pos, w_pos, n));
    out.push_back(segment(w_pos, s_pos, n));
  } else {
    out.push_back(ray_piece(params, c, 1.0, 0.0, pi / 2, e_pos, n_pos, n));
    out.push_back(ray_piece(params, c, -1.0, pi / 2, pi, n_pos, w_pos, n));
    out.push_back(ray_piece(params, c, 1.0, pi, 1.5 * pi, w_pos, s_pos, n));
  }

  if (regime == Regime::SubCritical) {
    out.push_back(ray_piece(params, c, 1.0, 1.5 * pi, 2.0 * pi, s_pos, e_pos, n));
    return out;
  }

  if (sup_norm(s_pos) >= ext && sup_norm(e_pos) >= ext) return out;

  if (regime == Regime::Critical) {
    // sqrt(p) s + sqrt(q) t = +-sqrt(c), direction (sqrt q, -sqrt p).
    const double rp = std::sqrt(p);
    const double rq = std::sqrt(q);
    auto ray_line = [&](const Coords& base) {
      const double lam = std::min((ext - base[0]) / rq, (ext - std::abs(base[1])) / rp);
      if (lam > 0.0) {
        out.push_back(segment(base, {base[0] + lam * rq, base[1] - lam * rp}, n));
      }
    };
    ray_line(s_pos);
    ray_line(e_pos);
    return out;
  }

  // pq > 4: f = A^2 - B^2 with A = sqrt(p)(s + q t / 2), B = sqrt(q (pq/4 - 1)) t.
  const double beta = std::sqrt(q * (p * q / 4.0 - 1.0));
  const double rp = std::sqrt(p);
  const double rc = std::sqrt(c);
  auto branch_point = [&](double a_sign, double w) -> Coords {
    const double t = rc * std::sinh(w) / beta;
    const double s = a_sign * rc * std::cosh(w) / rp - q * t / 2.0;
    return {s, t};
  };
  // Arm through (0, -sqrt(c/q)) lies on the A < 0 branch; w decreases from w0.
  const double w0 = -std::acosh(std::sqrt(p * q) / 2.0);
  auto arm = [&](double a_sign, double w_start, const Coords& base) {
    if (sup_norm(base) >= ext) return;
    const double span = clip_parameter(
        [&](double d) { return sup_norm(branch_point(a_sign, w_start - d)); }, ext);
    Polyline line;
    line.reserve(n);
    line.push_back(base);
    for (int k = 1; k < n; ++k) {
      line.push_back(branch_point(a_sign, w_start - span * k / (n - 1)));
    }
    out.push_back(std::move(line));
  };
  arm(-1.0, w0, s_pos);
  arm(1.0, 0.0, e_pos);
  return out;
}

}  // namespace realmut
