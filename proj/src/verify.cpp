#include "realmut/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "realmut/export.hpp"
#include "realmut/levelset.hpp"
#include "realmut/matrix_mutation.hpp"
#include "realmut/orbit.hpp"
#include "realmut/params.hpp"
#include "realmut/tropical.hpp"
#include "realmut/xmap.hpp"

namespace realmut {

namespace {

struct Suite {
  const char* name;
  std::function<std::string(SeededUniform&)> run;  // empty string on success
};

Params draw_params(SeededUniform& rng, Regime regime) {
  const double p = rng.next_in(0.3, 3.0);
  switch (regime) {
    case Regime::SubCritical:
      return Params(p, rng.next_in(0.05, 0.95) * 4.0 / p);
    case Regime::Critical:
      return Params(p, 4.0 / p);
    default:
      return Params(p, rng.next_in(1.1, 3.0) * 4.0 / p);
  }
}

// Size of the individual terms of f or g; phi can be much smaller.
double term_size(const Params& params, const PointPL& pt) {
  const double s = pt.s();
  const double t = pt.t();
  return params.p() * s * s + params.q() * t * t + params.product() * std::abs(s * t);
}

PointPL draw_point(SeededUniform& rng) {
  return PointPL(rng.next_in(-3.0, 3.0), rng.next_in(-3.0, 3.0));
}

std::string conservation_per_step(SeededUniform& rng) {
  for (Regime r : {Regime::SubCritical, Regime::Critical, Regime::SuperCritical}) {
    for (int k = 0; k < 200; ++k) {
      const Params params = draw_params(rng, r);
      PointPL pt = draw_point(rng);
      for (int n = 0; n < 20; ++n) {
        const PointPL next = mu_c(params, pt);
        const double a = phi(params, pt);
        const double b = phi(params, next);
        const double scale = std::max({1.0, term_size(params, pt), term_size(params, next)});
        if (std::abs(a - b) > 1e-12 * scale) {
          return std::string("phi changed by ") + format_double(a - b) +
                 " in regime " + to_string(r);
        }
        pt = next;
      }
    }
  }
  return {};
}

std::string conservation_long(SeededUniform& rng) {
  for (Regime r : {Regime::SubCritical, Regime::Critical}) {
    for (int k = 0; k < 20; ++k) {
      const Params params = draw_params(rng, r);
      const PointPL pt = draw_point(rng);
      const Orbit orbit =
          iterate_orbit(params, OrbitKind::Tropical, {pt.s(), pt.t()}, 10'000);
      const double drift = conserved_drift(orbit);
      if (drift > 1e-9) {
        return std::string("drift ") + format_double(drift) + " in regime " +
               to_string(r);
      }
    }
  }
  return {};
}

std::string inverse_round_trip(SeededUniform& rng) {
  for (int k = 0; k < 500; ++k) {
    const Params params(rng.next_in(0.3, 3.0), rng.next_in(0.3, 3.0));
    const PointPL pt = draw_point(rng);
    const PointPL back = mu_c_inv(params, mu_c(params, pt));
    if (std::max(std::abs(back.s() - pt.s()), std::abs(back.t() - pt.t())) >
        1e-12 * std::max(1.0, pt.norm_inf())) {
      return "tropical inverse round trip failed";
    }
    const PointPos x(rng.next_in(0.2, 5.0), rng.next_in(0.2, 5.0));
    const PointPos xb = mu_x_inv(params, mu_x(params, x));
    if (std::abs(xb.x() / x.x() - 1.0) > 1e-12 || std::abs(xb.y() / x.y() - 1.0) > 1e-12) {
      return "rational inverse round trip failed";
    }
  }
  return {};
}

std::string closed_forms_agree(SeededUniform& rng) {
  for (int k = 0; k < 500; ++k) {
    const Params params(rng.next_in(0.3, 3.0), rng.next_in(0.3, 3.0));
    const PointPL pt = draw_point(rng);
    const PointPL a = mu_c(params, pt);
    const PointPL b = mu_c_closed(params, pt);
    if (std::abs(a.s() - b.s()) > 1e-12 * std::max(1.0, a.norm_inf()) ||
        std::abs(a.t() - b.t()) > 1e-12 * std::max(1.0, a.norm_inf())) {
      return "tropical closed formula disagrees";
    }
    const PointPos x(rng.next_in(0.2, 5.0), rng.next_in(0.2, 5.0));
    const PointPos xa = mu_x(params, x);
    const PointPos xc = mu_x_closed(params, x);
    if (std::abs(xa.x() / xc.x() - 1.0) > 1e-12 || std::abs(xa.y() / xc.y() - 1.0) > 1e-12) {
      return "rational closed formula disagrees";
    }
  }
  return {};
}

std::string chebyshev_forms(SeededUniform& rng) {
  for (int k = 0; k < 200; ++k) {
    const Params params = draw_params(rng, Regime::SubCritical);
    const PointPL pt = draw_point(rng);
    PointPL it = pt;
    for (int n = 0; n <= 30; ++n) {
      const auto cheb = tau_closed_form(params, n, pt);
      const auto trig = tau_closed_form_trig(params, n, pt);
      const double scale = std::max(1.0, it.norm_inf());
      for (const PointPL& cand : {cheb.iterate, trig.iterate}) {
        if (std::max(std::abs(cand.s() - it.s()), std::abs(cand.t() - it.t())) >
            1e-9 * scale) {
          return "closed form of tau^" + std::to_string(n) + " disagrees";
        }
      }
      it = tau(params, it);
    }
  }
  return {};
}

std::string periods(SeededUniform& rng) {
  for (long m = 3; m <= 12; ++m) {
    const Params params(1.0, q_for_m(1.0, m));
    const int expected = m % 2 ? int(m + 2) : int((m + 2) / 2);
    for (int k = 0; k < 10; ++k) {
      const auto got = detect_period(params, draw_point(rng), 100);
      if (!got || *got != expected) {
        return "m=" + std::to_string(m) + " period " +
               (got ? std::to_string(*got) : std::string("none"));
      }
    }
  }
  return {};
}

std::string angle_monotone(SeededUniform& rng) {
  for (int k = 0; k < 50; ++k) {
    const Params params = draw_params(rng, k % 5 ? Regime::SuperCritical : Regime::Critical);
    PointPL pt = draw_point(rng);
    // Supercritical orbits with phi <= 0 turn the other way; only phi > 0
    // orbits are monotone there.
    if (phi(params, pt) <= 0.0) continue;
    const Orbit orbit = iterate_orbit(params, OrbitKind::Tropical, {pt.s(), pt.t()}, 60);
    if (orbit.truncation) continue;
    if (const auto bad = monotonic_angle_audit(orbit)) {
      return "angle increased at step " + std::to_string(*bad);
    }
  }
  return {};
}

std::string symplectic(SeededUniform& rng) {
  for (int k = 0; k < 200; ++k) {
    const Params params(rng.next_in(0.3, 3.0), rng.next_in(0.3, 3.0));
    const PointPos x(rng.next_in(0.2, 5.0), rng.next_in(0.2, 5.0));
    const double res = symplectic_residual_x(params, x);
    if (!(res < 1e-4)) return "log-Jacobian residual " + format_double(res);
  }
  for (int k = 0; k < 50; ++k) {
    const Params params(rng.next_in(0.3, 3.0), rng.next_in(0.3, 3.0));
    for (const auto& m : mu_c_branches(params)) {
      if (std::abs(std::abs(m.det()) - 1.0) > 1e-12) return "branch determinant not +-1";
    }
  }
  return {};
}

std::string mutation(SeededUniform& rng) {
  for (int k = 0; k < 200; ++k) {
    const Params params(rng.next_in(0.3, 3.0), rng.next_in(0.3, 3.0));
    const PointPL pt = draw_point(rng);
    const auto b = ExtendedExchangeMatrix::b_form(params, {{pt.s(), pt.t()}});
    const PointPL expected = mu1_c(params, pt);
    const MatrixRow got = mutate(b, 1).rows()[0];
    if (got[0] != expected.s() || got[1] != expected.t()) {
      return "row mutation differs from mu1_c";
    }
    const auto bp = ExtendedExchangeMatrix::b_prime_form(params, {{pt.s(), pt.t()}});
    const PointPL expected2 = mu2_c(params, pt);
    const MatrixRow got2 = mutate(bp, 2).rows()[0];
    if (got2[0] != expected2.s() || got2[1] != expected2.t()) {
      return "row mutation differs from mu2_c";
    }
    const auto twice = mutate(mutate(b, 1), 1);
    if (!approx_equal(twice, b, 1e-12)) return "mutation is not an involution";
  }
  return {};
}

std::string level_sets(SeededUniform& rng) {
  for (Regime r : {Regime::SubCritical, Regime::Critical, Regime::SuperCritical}) {
    for (int k = 0; k < 20; ++k) {
      const Params params = draw_params(rng, r);
      const double c = rng.next_in(0.1, 10.0);
      for (const auto& line : levelset_points(params, c, 64)) {
        for (const auto& pt : line) {
          const double v = phi(params, PointPL(pt[0], pt[1]));
          if (std::abs(v - c) > 1e-9 * c) {
            return std::string("level set point off the curve in regime ") + to_string(r);
          }
        }
      }
    }
  }
  return {};
}

}  // namespace

bool run_property_suites(std::ostream& out, std::uint64_t seed) {
  const std::vector<Suite> suites = {
      {"conservation-per-step", conservation_per_step},
      {"conservation-long-horizon", conservation_long},
      {"inverse-round-trip", inverse_round_trip},
      {"closed-formulas", closed_forms_agree},
      {"tau-closed-forms", chebyshev_forms},
      {"periodicity", periods},
      {"angle-monotone", angle_monotone},
      {"symplectic", symplectic},
      {"matrix-mutation", mutation},
      {"level-sets", level_sets},
  };
  bool ok = true;
  std::uint64_t k = 0;
  for (const auto& suite : suites) {
    SeededUniform rng(seed * 1000 + k++);
    std::string failure;
    try {
      failure = suite.run(rng);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    out << (failure.empty() ? "PASS " : "FAIL ") << suite.name;
    if (!failure.empty()) out << ": " << failure;
    out << '\n';
    ok = ok && failure.empty();
  }
  return ok;
}

}  // namespace realmut
