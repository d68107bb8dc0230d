#include "realmut/tropical.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "realmut/detail/numeric.hpp"
#include "realmut/errors.hpp"

namespace realmut {

using detail::plus_part;

PointPL::PointPL(double s, double t) : s_(s), t_(t) {
  if (!std::isfinite(s) || !std::isfinite(t)) {
    throw RangeError("PointPL: coordinates must be finite");
  }
}

double PointPL::norm_inf() const noexcept {
  return std::max(std::abs(s_), std::abs(t_));
}

char to_char(Sign s) noexcept {
  switch (s) {
    case Sign::Negative:
      return '-';
    case Sign::Zero:
      return '0';
    case Sign::Positive:
      return '+';
  }
  return '?';
}

PointPL mu1_c(const Params& params, const PointPL& pt) {
  return {-pt.s(), pt.t() + params.p() * plus_part(pt.s())};
}

PointPL mu2_c(const Params& params, const PointPL& pt) {
  return {pt.s() + params.q() * plus_part(pt.t()), -pt.t()};
}

PointPL mu_c(const Params& params, const PointPL& pt) {
  return mu2_c(params, mu1_c(params, pt));
}

PointPL mu1_c_inv(const Params& params, const PointPL& pt) {
  return {-pt.s(), pt.t() - params.p() * plus_part(-pt.s())};
}

PointPL mu2_c_inv(const Params& params, const PointPL& pt) {
  return {pt.s() - params.q() * plus_part(-pt.t()), -pt.t()};
}

PointPL mu_c_inv(const Params& params, const PointPL& pt) {
  return mu1_c_inv(params, mu2_c_inv(params, pt));
}

PointPL mu_c_closed(const Params& params, const PointPL& pt) {
  const double s = pt.s();
  const double t = pt.t();
  const double p = params.p();
  const double q = params.q();
  return {-s + q * plus_part(t + p * plus_part(s)), -t - p * plus_part(s)};
}

namespace {

double quad_form(const Params& params, const PointPL& pt, double cross_sign) {
  const double p = params.p();
  const double q = params.q();
  const double s = pt.s();
  const double t = pt.t();
  detail::Compensated acc;
  acc.add_product3(p, s, s);
  // pq*s*t with pq kept exact as a two-term product.
  const detail::TwoTerm pq = detail::two_prod(p, q);
  acc.add_product3(cross_sign * pq.hi, s, t);
  acc.add_product3(cross_sign * pq.lo, s, t);
  acc.add_product3(q, t, t);
  return acc.value();
}

}  // namespace

double f_quad(const Params& params, const PointPL& pt) {
  return quad_form(params, pt, 1.0);
}

double g_quad(const Params& params, const PointPL& pt) {
  return quad_form(params, pt, -1.0);
}

double phi(const Params& params, const PointPL& pt) {
  if (pt.s() < 0.0 && pt.t() > 0.0) return g_quad(params, pt);
  return f_quad(params, pt);
}

PointPL tau1(const Params& params, const PointPL& pt) {
  return {-pt.s(), pt.t() + params.p() * pt.s()};
}

PointPL tau2(const Params& params, const PointPL& pt) {
  return {pt.s() + params.q() * pt.t(), -pt.t()};
}

PointPL tau(const Params& params, const PointPL& pt) {
  return tau2(params, tau1(params, pt));
}

PointPL tau_matrix_form(const Params& params, const PointPL& pt) {
  const double p = params.p();
  const double q = params.q();
  return {(p * q - 1.0) * pt.s() + q * pt.t(), -p * pt.s() - pt.t()};
}

double chebyshev_u(int n, double x) {
  if (n < -1) throw DomainError("chebyshev_u: requires n >= -1");
  if (n == -1) return 0.0;
  double prev = 1.0;  // U_0
  if (n == 0) return prev;
  double cur = 2.0 * x;  // U_1
  for (int k = 2; k <= n; ++k) {
    const double next = 2.0 * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// U_k(x) for k = -2 .. top, indexed by k + 2. The recurrence run backwards
// from U_0 = 1, U_{-1} = 0 gives U_{-2} = -1.
std::vector<double> chebyshev_table(int top, double x) {
  std::vector<double> u(static_cast<std::size_t>(top + 3));
  u[0] = -1.0;
  u[1] = 0.0;
  for (int k = 0; k <= top; ++k) {
    const auto i = static_cast<std::size_t>(k + 2);
    u[i] = 2.0 * x * u[i - 1] - u[i - 2];
  }
  return u;
}

void require_nonnegative_power(int n) {
  if (n < 0) throw DomainError("tau closed form: requires n >= 0");
}

}  // namespace

TauClosedForm tau_closed_form(const Params& params, int n, const PointPL& pt) {
  require_nonnegative_power(n);
  const auto [kappa, nu] = kappa_nu(params);
  const auto table = chebyshev_table(2 * n + 1, kappa / 2.0);
  auto U = [&](int k) { return table[static_cast<std::size_t>(k + 2)]; };
  const double s = pt.s();
  const double t = pt.t();
  const double sn = s * U(2 * n) + t / nu * U(2 * n - 1);
  const double tn = -s * nu * U(2 * n - 1) - t * U(2 * n - 2);
  const double tilde_s = -s * U(2 * n) - t / nu * U(2 * n - 1);
  const double tilde_t = s * nu * U(2 * n + 1) + t * U(2 * n);
  return {PointPL(sn, tn), PointPL(tilde_s, tilde_t)};
}

TauClosedForm tau_closed_form_trig(const Params& params, int n,
                                   const PointPL& pt) {
  require_nonnegative_power(n);
  if (!(params.product() < 4.0)) {
    throw RegimeError("tau_closed_form_trig: requires pq < 4");
  }
  const double theta = theta_of(params);
  const double nu = kappa_nu(params).nu;
  const double st = std::sin(theta);
  auto S = [&](int k) { return std::sin(k * theta) / st; };
  const double s = pt.s();
  const double t = pt.t();
  const double sn = s * S(2 * n + 1) + t * S(2 * n) / nu;
  const double tn = -s * nu * S(2 * n) - t * S(2 * n - 1);
  const double tilde_s = -s * S(2 * n + 1) - t * S(2 * n) / nu;
  const double tilde_t = s * nu * S(2 * n + 2) + t * S(2 * n + 1);
  return {PointPL(sn, tn), PointPL(tilde_s, tilde_t)};
}

PointPL hat_mu1(const Params& params, const PointPL& pt) {
  return {params.q() * plus_part(pt.t()) - pt.s(), pt.t()};
}

PointPL hat_mu2(const Params& params, const PointPL& pt) {
  return {pt.s(), params.p() * plus_part(pt.s()) - pt.t()};
}

PointPL reflect_x(const PointPL& pt) { return {-pt.s(), pt.t()}; }

PointPL reflect_y(const PointPL& pt) { return {pt.s(), -pt.t()}; }

ReflectionIdentities check_reflection_identities(
    const Params& params, std::span<const PointPL> points) {
  ReflectionIdentities out;
  for (const PointPL& z : points) {
    const PointPL m1 = mu1_c(params, z);
    const PointPL m2 = mu2_c(params, z);
    const PointPL m = mu_c(params, z);
    out.mu2_is_ry_hat1_rx &=
        reflect_y(hat_mu1(params, reflect_x(z))) == m2;
    const PointPL rx_hat2_ry = reflect_x(hat_mu2(params, reflect_y(z)));
    out.mu2_is_rx_hat2_ry &= rx_hat2_ry == m2;
    out.mu1_is_rx_hat2_ry &= rx_hat2_ry == m1;
    out.mu_is_rx_hat1_hat2_rx &=
        reflect_x(hat_mu1(params, hat_mu2(params, reflect_x(z)))) == m;
    out.mu_is_ry_hat1_hat2_ry &=
        reflect_y(hat_mu1(params, hat_mu2(params, reflect_y(z)))) == m;
  }
  return out;
}

double polar_cut(const Params& params) {
  return std::atan(-kappa_nu(params).nu);
}

PolarAngle polar_angle(const Params& params, const PointPL& pt) {
  if (pt.s() == 0.0 && pt.t() == 0.0) {
    throw DomainError("polar_angle: undefined at the origin");
  }
  const double sp = std::sqrt(params.p());
  const double sq = std::sqrt(params.q());
  // Angle measured counterclockwise from the cut direction (sqrt q, -sqrt p).
  const double across = sp * pt.s() + sq * pt.t();
  const double along = sq * pt.s() - sp * pt.t();
  double rel = std::atan2(across, along);
  if (rel <= 0.0) rel += 2.0 * std::numbers::pi;
  return {polar_cut(params) + rel};
}

std::optional<int> detect_period(const Params& params, const PointPL& pt,
                                 int max_steps, const Tolerances& tol) {
  if (max_steps < 1) throw DomainError("detect_period: max_steps must be >= 1");
  const double bound = tol.period_tol() * std::max(1.0, pt.norm_inf());
  double s = pt.s();
  double t = pt.t();
  const double p = params.p();
  const double q = params.q();
  for (int k = 1; k <= max_steps; ++k) {
    // mu_c inlined so non-finite values end the search instead of throwing.
    const double s1 = -s;
    const double t1 = t + p * plus_part(s);
    s = s1 + q * plus_part(t1);
    t = -t1;
    if (!std::isfinite(s) || !std::isfinite(t)) return std::nullopt;
    if (std::max(std::abs(s - pt.s()), std::abs(t - pt.t())) <= bound) {
      return k;
    }
  }
  return std::nullopt;
}

namespace {

Sign sign_with_band(double v, double band) {
  if (std::abs(v) <= band) return Sign::Zero;
  return v > 0.0 ? Sign::Positive : Sign::Negative;
}

// mu_c is positively homogeneous, so rescaling by a power of two changes no
// sign, angle or branch decision and keeps long runs finite.
void renormalize(double& s, double& t) {
  constexpr double kLimit = 0x1p512;
  if (std::max(std::abs(s), std::abs(t)) > kLimit) {
    s = std::ldexp(s, -256);
    t = std::ldexp(t, -256);
  }
}

}  // namespace

SignPair sign_pair(const PointPL& pt, double scale, const Tolerances& tol) {
  const double band = tol.eq_tol() * scale;
  return {sign_with_band(pt.s(), band), sign_with_band(pt.t(), band)};
}

SignPair sign_pair(const PointPL& pt, const Tolerances& tol) {
  return sign_pair(pt, std::max(1.0, pt.norm_inf()), tol);
}

std::optional<int> first_sign_coherent_index(const Params& params,
                                             const PointPL& pt, int cap,
                                             const Tolerances& tol) {
  if (cap < 1) throw DomainError("first_sign_coherent_index: cap must be >= 1");
  constexpr SignPair coherent{Sign::Positive, Sign::Negative};
  double s = pt.s();
  double t = pt.t();
  std::optional<int> start;
  for (int n = 0; n <= cap; ++n) {
    if (n > 0) {
      const PointPL next = mu_c(params, PointPL(s, t));
      s = next.s();
      t = next.t();
      renormalize(s, t);
    }
    if (sign_pair(PointPL(s, t), tol) == coherent) {
      if (!start) start = n;
    } else {
      start.reset();
    }
  }
  return start;
}

std::optional<int> first_invariant_wedge_index(const Params& params,
                                               const PointPL& pt, int cap) {
  if (cap < 0) throw DomainError("first_invariant_wedge_index: cap must be >= 0");
  const double sp = std::sqrt(params.p());
  const double sq = std::sqrt(params.q());
  double s = pt.s();
  double t = pt.t();
  for (int n = 0; n <= cap; ++n) {
    if (n > 0) {
      const PointPL next = mu_c(params, PointPL(s, t));
      s = next.s();
      t = next.t();
      renormalize(s, t);
    }
    if (s > 0.0 && t < 0.0 && sp * s + sq * t >= 0.0) return n;
  }
  return std::nullopt;
}

double slope_angle_delta(const Params& params, const PointPL& pt,
                         const PointPL& image) {
  if (!(pt.s() > 0.0 && pt.t() < 0.0 && image.s() > 0.0)) {
    throw DomainError(
        "slope_angle_delta: requires s > 0, t < 0 and image s' > 0");
  }
  const double turn = f_quad(params, pt);
  const double dot = pt.s() * image.s() + pt.t() * image.t();
  return std::atan2(turn, dot);
}

double BranchMatrix::det() const noexcept { return detail::det2(a, b, c, d); }

std::array<BranchMatrix, 2> mu1_c_branches(const Params& params) {
  return {BranchMatrix{-1.0, 0.0, params.p(), 1.0},  // s > 0
          BranchMatrix{-1.0, 0.0, 0.0, 1.0}};        // s <= 0
}

std::array<BranchMatrix, 2> mu2_c_branches(const Params& params) {
  return {BranchMatrix{1.0, params.q(), 0.0, -1.0},  // t > 0
          BranchMatrix{1.0, 0.0, 0.0, -1.0}};        // t <= 0
}

std::array<BranchMatrix, 4> mu_c_branches(const Params& params) {
  std::array<BranchMatrix, 4> out{};
  std::size_t i = 0;
  for (const BranchMatrix& m2 : mu2_c_branches(params)) {
    for (const BranchMatrix& m1 : mu1_c_branches(params)) {
      out[i++] = {m2.a * m1.a + m2.b * m1.c, m2.a * m1.b + m2.b * m1.d,
                  m2.c * m1.a + m2.d * m1.c, m2.c * m1.b + m2.d * m1.d};
    }
  }
  return out;
}

}  // namespace realmut
