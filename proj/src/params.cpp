#include "realmut/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "realmut/errors.hpp"

namespace realmut {

Params::Params(double p, double q) : p_(p), q_(q) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw DomainError("Params: p and q must be finite and positive (got p=" +
                      std::to_string(p) + ", q=" + std::to_string(q) + ")");
  }
}

const char* to_string(Regime r) noexcept {
  switch (r) {
    case Regime::SubCritical:
      return "subcritical";
    case Regime::Critical:
      return "critical";
    case Regime::SuperCritical:
      return "supercritical";
  }
  return "?";
}

Tolerances::Tolerances(double eq_tol, double period_tol, double jac_step)
    : eq_tol_(eq_tol), period_tol_(period_tol), jac_step_(jac_step) {
  if (!(eq_tol >= 0.0) || !(period_tol >= 0.0) || !(jac_step > 0.0)) {
    throw DomainError(
        "Tolerances: eq_tol and period_tol must be >= 0 and jac_step > 0");
  }
}

Regime classify_regime(const Params& params, const Tolerances& tol) {
  const double gap = params.product() - 4.0;
  if (std::abs(gap) <= tol.eq_tol()) return Regime::Critical;
  return gap < 0.0 ? Regime::SubCritical : Regime::SuperCritical;
}

double theta_of(const Params& params) {
  const double pq = params.product();
  if (!(pq < 4.0)) {
    throw RegimeError("theta_of: requires pq < 4 (pq=" + std::to_string(pq) +
                      ")");
  }
  return std::acos(std::sqrt(pq) / 2.0);
}

KappaNu kappa_nu(const Params& params) {
  return {std::sqrt(params.product()), std::sqrt(params.p() / params.q())};
}

double q_for_m(double p, long m) {
  const double c = std::cos(std::numbers::pi / static_cast<double>(m));
  return 4.0 * c * c / p;
}

std::optional<long> detect_m(const Params& params, const Tolerances& tol,
                             long cap) {
  const double pq = params.product();
  if (!(pq < 4.0)) return std::nullopt;
  const double m_real = std::numbers::pi / theta_of(params);
  if (!(m_real < static_cast<double>(cap) + 0.5)) return std::nullopt;
  const long m = std::lround(m_real);
  if (m < 3 || m > cap) return std::nullopt;
  const double c = std::cos(std::numbers::pi / static_cast<double>(m));
  if (std::abs(pq - 4.0 * c * c) <= tol.eq_tol()) return m;
  return std::nullopt;
}

}  // namespace realmut
