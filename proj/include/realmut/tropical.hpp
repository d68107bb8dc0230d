#pragma once

#include <array>
#include <optional>
#include <span>

#include "realmut/params.hpp"

namespace realmut {

/// A point of the plane, the state of the piecewise-linear map.
class PointPL {
 public:
  PointPL(double s, double t);

  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  double norm_inf() const noexcept;

  friend bool operator==(const PointPL&, const PointPL&) = default;

 private:
  double s_;
  double t_;
};

enum class Sign { Negative, Zero, Positive };

struct SignPair {
  Sign first;
  Sign second;
  friend bool operator==(const SignPair&, const SignPair&) = default;
};

char to_char(Sign s) noexcept;

/// Polar angle lifted into (cut, cut + 2pi], cut = arctan(-sqrt(p/q)).
struct PolarAngle {
  double theta;
};

// mu1(s,t) = (-s, t + p[s]_+),  mu2(s,t) = (s + q[t]_+, -t).
PointPL mu1_c(const Params& params, const PointPL& pt);
PointPL mu2_c(const Params& params, const PointPL& pt);
PointPL mu_c(const Params& params, const PointPL& pt);  // mu2 o mu1
PointPL mu1_c_inv(const Params& params, const PointPL& pt);
PointPL mu2_c_inv(const Params& params, const PointPL& pt);
PointPL mu_c_inv(const Params& params, const PointPL& pt);

/// (-s + q[t + p[s]_+]_+, -t - p[s]_+) written out in one expression.
PointPL mu_c_closed(const Params& params, const PointPL& pt);

// The quadratic forms are evaluated with compensated products so the result
// is rounded once.
double f_quad(const Params& params, const PointPL& pt);
double g_quad(const Params& params, const PointPL& pt);
/// g on the open second quadrant, f elsewhere; invariant under mu_c.
double phi(const Params& params, const PointPL& pt);

// Linear pieces agreeing with mu1/mu2 where [.]_+ is the identity.
PointPL tau1(const Params& params, const PointPL& pt);
PointPL tau2(const Params& params, const PointPL& pt);
/// tau2 o tau1, computed by composition.
PointPL tau(const Params& params, const PointPL& pt);
/// ((pq - 1)s + qt, -ps - t) evaluated directly.
PointPL tau_matrix_form(const Params& params, const PointPL& pt);

/// Chebyshev polynomial of the second kind, U_{-1} = 0, U_0 = 1.
double chebyshev_u(int n, double x);

struct TauClosedForm {
  PointPL iterate;  // tau^n(pt)
  PointPL tilde;    // tau1(tau^n(pt))
};

/// tau^n via the Chebyshev expressions in kappa/2. Valid in every regime.
TauClosedForm tau_closed_form(const Params& params, int n, const PointPL& pt);
/// The same quantities written with sin(k theta)/sin(theta); pq < 4 only.
TauClosedForm tau_closed_form_trig(const Params& params, int n,
                                   const PointPL& pt);

// Tropicalized rational mutations and the coordinate reflections.
PointPL hat_mu1(const Params& params, const PointPL& pt);
PointPL hat_mu2(const Params& params, const PointPL& pt);
PointPL reflect_x(const PointPL& pt);
PointPL reflect_y(const PointPL& pt);

/// Which reflection identities between the c-maps and the hat-maps hold
/// (bitwise) on every supplied point.
struct ReflectionIdentities {
  bool mu2_is_ry_hat1_rx = true;
  bool mu2_is_rx_hat2_ry = true;
  bool mu1_is_rx_hat2_ry = true;
  bool mu_is_rx_hat1_hat2_rx = true;
  bool mu_is_ry_hat1_hat2_ry = true;
};

ReflectionIdentities check_reflection_identities(
    const Params& params, std::span<const PointPL> points);

double polar_cut(const Params& params);
PolarAngle polar_angle(const Params& params, const PointPL& pt);

/// Smallest k <= max_steps with ||mu^k(pt) - pt||_inf <= period_tol *
/// max(1, ||pt||_inf).
std::optional<int> detect_period(const Params& params, const PointPL& pt,
                                 int max_steps, const Tolerances& tol = {});

/// Componentwise sign with |coord| <= eq_tol * scale treated as zero.
SignPair sign_pair(const PointPL& pt, double scale, const Tolerances& tol = {});
/// As above with scale = max(1, ||pt||_inf).
SignPair sign_pair(const PointPL& pt, const Tolerances& tol = {});

/// Least N <= cap such that mu^n(pt) has signs (+,-) for every n in [N, cap].
std::optional<int> first_sign_coherent_index(const Params& params,
                                             const PointPL& pt, int cap,
                                             const Tolerances& tol = {});

/// Least N <= cap such that mu^N(pt) lies in the forward-invariant wedge
/// {s > 0, t < 0, sqrt(p) s + sqrt(q) t >= 0}.
std::optional<int> first_invariant_wedge_index(const Params& params,
                                               const PointPL& pt, int cap);

/// arctan(f(pt) / (s s' + t t')): the angle by which tau turns a fourth
/// quadrant point.
double slope_angle_delta(const Params& params, const PointPL& pt,
                         const PointPL& image);

/// A linear piece [[a, b], [c, d]] acting on column vectors (s, t).
struct BranchMatrix {
  double a, b, c, d;
  double det() const noexcept;
};

std::array<BranchMatrix, 2> mu1_c_branches(const Params& params);
std::array<BranchMatrix, 2> mu2_c_branches(const Params& params);
/// Products mu2-branch * mu1-branch over all four combinations.
std::array<BranchMatrix, 4> mu_c_branches(const Params& params);

}  // namespace realmut
