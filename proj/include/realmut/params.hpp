#pragma once

#include <optional>

namespace realmut {

/// The exchange parameters (p, q); both strictly positive.
class Params {
 public:
  Params(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  double product() const noexcept { return p_ * q_; }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  double p_;
  double q_;
};

enum class Regime { SubCritical, Critical, SuperCritical };

const char* to_string(Regime r) noexcept;

class Tolerances {
 public:
  Tolerances() = default;
  Tolerances(double eq_tol, double period_tol, double jac_step);

  double eq_tol() const noexcept { return eq_tol_; }
  double period_tol() const noexcept { return period_tol_; }
  double jac_step() const noexcept { return jac_step_; }

 private:
  double eq_tol_ = 1e-12;
  double period_tol_ = 1e-9;
  double jac_step_ = 1e-6;
};

Regime classify_regime(const Params& params, const Tolerances& tol = {});

/// The angle in (0, pi/2) with pq = 4 cos^2(theta). Only defined for pq < 4.
double theta_of(const Params& params);

struct KappaNu {
  double kappa;  // sqrt(pq)
  double nu;     // sqrt(p/q)
};

KappaNu kappa_nu(const Params& params);

inline constexpr long kDefaultMCap = 1'000'000;

/// The integer m >= 3 with pq = 4 cos^2(pi/m), if one exists below `cap`.
std::optional<long> detect_m(const Params& params, const Tolerances& tol = {},
                             long cap = kDefaultMCap);

/// q such that p*q = 4 cos^2(pi/m).
double q_for_m(double p, long m);

}  // namespace realmut
