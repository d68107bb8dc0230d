#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "realmut/errors.hpp"
#include "realmut/params.hpp"

using namespace realmut;
using std::numbers::pi;

TEST_CASE("Params rejects non-positive and non-finite values") {
  CHECK_THROWS_AS(Params(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Params(1.0, -2.0), DomainError);
  CHECK_THROWS_AS(Params(std::numeric_limits<double>::infinity(), 1.0), DomainError);
  CHECK_THROWS_AS(Params(1.0, std::nan("")), DomainError);
  const Params ok(1.5, 2.0);
  CHECK(ok.product() == 3.0);
}

TEST_CASE("Tolerances defaults and validation") {
  const Tolerances t;
  CHECK(t.eq_tol() == 1e-12);
  CHECK(t.period_tol() == 1e-9);
  CHECK(t.jac_step() == 1e-6);
  CHECK_THROWS_AS(Tolerances(-1.0, 1e-9, 1e-6), DomainError);
  CHECK_THROWS_AS(Tolerances(1e-12, 1e-9, 0.0), DomainError);
}

TEST_CASE("classify_regime partitions the parameter plane") {
  CHECK(classify_regime(Params(1, 1)) == Regime::SubCritical);
  CHECK(classify_regime(Params(2, 2)) == Regime::Critical);
  CHECK(classify_regime(Params(1, 4)) == Regime::Critical);
  CHECK(classify_regime(Params(3, 3)) == Regime::SuperCritical);
  CHECK(classify_regime(Params(1, 4.0 + 1e-13)) == Regime::Critical);
  CHECK(classify_regime(Params(1, 4.0 + 1e-13), Tolerances(0.0, 1e-9, 1e-6)) ==
        Regime::SuperCritical);
  CHECK(std::string(to_string(Regime::Critical)) == "critical");
}

TEST_CASE("theta_of") {
  CHECK(theta_of(Params(1, 1)) == doctest::Approx(pi / 3).epsilon(1e-15));
  CHECK(theta_of(Params(1, 2)) == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK_THROWS_AS(theta_of(Params(2, 2)), RegimeError);
  CHECK_THROWS_AS(theta_of(Params(3, 3)), RegimeError);
}

TEST_CASE("4 cos^2(theta) reproduces pq within 4 ulps") {
  for (int k = 1; k < 4000; ++k) {
    const double pq = k * 1e-3;
    const double c = std::cos(theta_of(Params(pq, 1.0)));
    const double back = 4.0 * c * c;
    CHECK(std::abs(back - pq) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(pq, 1.0));
  }
}

TEST_CASE("kappa_nu") {
  auto a = kappa_nu(Params(1, 1));
  CHECK(a.kappa == 1.0);
  CHECK(a.nu == 1.0);
  a = kappa_nu(Params(2, 2));
  CHECK(a.kappa == 2.0);
  CHECK(a.nu == 1.0);
  a = kappa_nu(Params(1, 4));
  CHECK(a.kappa == 2.0);
  CHECK(a.nu == 0.5);
}

TEST_CASE("detect_m examples") {
  CHECK(detect_m(Params(1, 1)) == 3L);
  CHECK(detect_m(Params(1, 3)) == 6L);
  CHECK_FALSE(detect_m(Params(1, 2.5)).has_value());
  CHECK_FALSE(detect_m(Params(2, 2)).has_value());
  CHECK_FALSE(detect_m(Params(3, 3)).has_value());
}

TEST_CASE("pq = 2.5 has no m: brute-force oracle agrees") {
  CHECK_FALSE(oracle::brute_force_m(2.5, 1e-12, 1'000'000).has_value());
}

TEST_CASE("detect_m inverts q_for_m for 3 <= m <= 1000") {
  for (long m = 3; m <= 1000; ++m) {
    const Params params(1.0, q_for_m(1.0, m));
    REQUIRE(detect_m(params) == m);
  }
}

TEST_CASE("detect_m agrees with scanning every m") {
  for (long m = 3; m <= 60; ++m) {
    const double q = q_for_m(1.0, m);
    CHECK(oracle::brute_force_m(q, 1e-12, 200) == detect_m(Params(1.0, q)));
    const double off = q + 1e-7;
    CHECK(oracle::brute_force_m(off, 1e-12, 200) == detect_m(Params(1.0, off)));
  }
}

TEST_CASE("detect_m respects the cap") {
  const Params params(1.0, q_for_m(1.0, 50));
  CHECK(detect_m(params, {}, 100) == 50L);
  CHECK_FALSE(detect_m(params, {}, 49).has_value());
}
