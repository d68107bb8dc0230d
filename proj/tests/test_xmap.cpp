#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <limits>

#include "realmut/errors.hpp"
#include "realmut/orbit.hpp"
#include "realmut/xmap.hpp"

using namespace realmut;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool within_ulps(double a, double b, double ulps) {
  return std::abs(a - b) <= ulps * kEps * std::max(std::abs(a), std::abs(b));
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("points reject the boundary of the quadrant") {
  CHECK_THROWS_AS(PointPos(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(PointPos(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(UVPoint(1.0, 0.0), DomainError);
}

TEST_CASE("single mutations, hand values") {
  const Params one(1, 1);
  auto a = mu1_x(one, PointPos(1, 1));
  CHECK(a.x() == 2.0);
  CHECK(a.y() == 1.0);
  a = mu1_x(one, PointPos(2, 1));
  CHECK(a.x() == 1.0);
  CHECK(a.y() == 1.0);
  a = mu2_x(one, PointPos(2, 1));
  CHECK(a.x() == 2.0);
  CHECK(a.y() == 3.0);
  a = mu2_x(one, PointPos(2, 3));
  CHECK(a.x() == 2.0);
  CHECK(a.y() == 1.0);
}

TEST_CASE("composite map, hand values") {
  auto a = mu_x(Params(1, 1), PointPos(1, 1));
  CHECK(a.x() == 2.0);
  CHECK(a.y() == 3.0);
  a = mu_x(Params(2, 1), PointPos(1, 1));
  CHECK(a.x() == 2.0);
  CHECK(a.y() == 5.0);
  a = mu_x_inv(Params(1, 1), PointPos(2, 3));
  CHECK(a.x() == 1.0);
  CHECK(a.y() == 1.0);
}

TEST_CASE("fixed curves are fixed by the corresponding mutation") {
  SeededUniform rng(11);
  for (int k = 0; k < 200; ++k) {
    const Params params(rng.next_in(0.2, 4), rng.next_in(0.2, 4));
    const double c = rng.next_in(0.1, 5);
    const auto fc = fixed_curves(params, c);
    const auto m1 = mu1_x(params, PointPos(fc.c1_x, c));
    CHECK(rel_close(m1.x(), fc.c1_x, 4 * kEps));
    const auto m2 = mu2_x(params, PointPos(c, fc.c2_y));
    CHECK(rel_close(m2.y(), fc.c2_y, 4 * kEps));
  }
  CHECK(fixed_curves(Params(1, 1), 3).c1_x == 2.0);
  CHECK(fixed_curves(Params(1, 1), 3).c2_y == 2.0);
  CHECK_THROWS_AS(fixed_curves(Params(1, 1), 0.0), DomainError);
}

TEST_CASE("involutions and closed formula on random points, all regimes") {
  SeededUniform rng(12);
  for (int k = 0; k < 1000; ++k) {
    const Params params(rng.next_in(0.2, 4), rng.next_in(0.2, 4));
    const PointPos pt(rng.next_in(0.1, 5), rng.next_in(0.1, 5));
    const auto a = mu1_x(params, mu1_x(params, pt));
    const auto b = mu2_x(params, mu2_x(params, pt));
    CHECK(rel_close(a.x(), pt.x(), 1e-12));
    CHECK(b.y() == doctest::Approx(pt.y()).epsilon(1e-12));
    const auto m = mu_x(params, pt);
    const auto c = mu_x_closed(params, pt);
    CHECK(within_ulps(m.x(), c.x(), 4));
    CHECK(within_ulps(m.y(), c.y(), 4));
    const auto o = oracle::mu_x(params.p(), params.q(), pt.x(), pt.y());
    CHECK(rel_close(m.x(), o[0], 1e-14));
    CHECK(rel_close(m.y(), o[1], 1e-14));
    const auto back = mu_x_inv(params, m);
    CHECK(rel_close(back.x(), pt.x(), 1e-12));
    CHECK(rel_close(back.y(), pt.y(), 1e-12));
  }
}

TEST_CASE("overflow is a range error") {
  CHECK_THROWS_AS(mu1_x(Params(1, 400), PointPos(1, 1e300)), RangeError);
  CHECK_THROWS_AS(mu2_x(Params(400, 1), PointPos(1e10, 1)), RangeError);
}

TEST_CASE("(u, v) coordinates") {
  auto uv = to_uv(Params(2, 1), PointPos(3, 2));
  CHECK(uv.u() == 9.0);
  CHECK(uv.v() == 4.0);
  uv = to_uv(Params(1, 1), PointPos(5, 1));
  CHECK(uv.u() == 5.0);
  CHECK(uv.v() == 1.0);

  SeededUniform rng(13);
  for (int k = 0; k < 1000; ++k) {
    const Params params(rng.next_in(0.2, 4), rng.next_in(0.2, 4));
    const PointPos pt(rng.next_in(0.1, 5), rng.next_in(0.1, 5));
    const auto back = from_uv(params, to_uv(params, pt));
    CHECK(rel_close(back.x(), pt.x(), 1e-12));
    CHECK(rel_close(back.y(), pt.y(), 1e-12));
    const auto direct = mu_uv(params, to_uv(params, pt));
    const auto conj = to_uv(params, mu_x(params, pt));
    CHECK(rel_close(direct.u(), conj.u(), 1e-10));
    CHECK(rel_close(direct.v(), conj.v(), 1e-10));
  }
}

TEST_CASE("mutations in (u, v), hand values") {
  const Params two(2, 2);
  const auto a = mu1_uv(two, UVPoint(1, 1));
  CHECK(a.u() == 4.0);
  CHECK(a.v() == 1.0);
  const auto b = mu_uv(two, UVPoint(1, 1));
  CHECK(b.u() == 4.0);
  CHECK(b.v() == 25.0);
  // Points of v = 1 + u are fixed by the second mutation.
  const auto c = mu2_uv(two, UVPoint(3, 4));
  CHECK(c.u() == 3.0);
  CHECK(c.v() == 4.0);
}

TEST_CASE("region classification") {
  const Params three(3, 3);
  CHECK(region_uv(three, UVPoint(1, 10)) == UVRegion::III);
  CHECK(region_uv(three, UVPoint(10, 1)) == UVRegion::II);
  CHECK(region_uv(three, UVPoint(2, 2.5)) == UVRegion::I);
  CHECK(region_uv(three, UVPoint(2, 3)) == UVRegion::BoundaryC2);
  const double c1 = std::pow(1.0 + std::pow(2.0, 1.5), 1.5);
  CHECK(region_uv(three, UVPoint(c1, 2)) == UVRegion::BoundaryC1);
  CHECK_THROWS_AS(region_uv(Params(1, 1), UVPoint(1, 1)), RegimeError);
}

TEST_CASE("region classification is exhaustive and exclusive") {
  SeededUniform rng(14);
  for (int k = 0; k < 2000; ++k) {
    const double p = rng.next_in(0.5, 4);
    const Params params(p, rng.next_in(1.0, 3.0) * 4.0 / p);
    const UVPoint uv(rng.next_in(0.01, 50), rng.next_in(0.01, 50));
    const double c1 = std::pow(1.0 + std::pow(uv.v(), params.q() / 2), params.p() / 2);
    const bool iii = uv.v() > 1 + uv.u();
    const bool ii = uv.u() > c1;
    CHECK_FALSE((iii && ii));
    const UVRegion r = region_uv(params, uv);
    if (r == UVRegion::III) CHECK(iii);
    if (r == UVRegion::II) CHECK(ii);
    if (r == UVRegion::I) CHECK((!iii && !ii));
  }
}

TEST_CASE("H and V hand values") {
  for (double v : {1.0, 2.0, 7.5, 100.0}) CHECK(H_dist(Params(2, 2), v) == doctest::Approx(2.0));
  for (double u : {1.0, 2.0, 7.5, 100.0}) CHECK(V_dist(Params(2, 2), u) == doctest::Approx(2.0));
  CHECK(H_dist(Params(3, 3), 1.0) == doctest::Approx(2.8284271247461903).epsilon(1e-15));
  CHECK_THROWS_AS(H_dist(Params(3, 3), 0.5), DomainError);
  CHECK_THROWS_AS(V_dist(Params(3, 3), 0.5), DomainError);
  CHECK_THROWS_AS(H_dist(Params(1, 1), 2.0), RegimeError);
}

TEST_CASE("H is increasing for pq > 4 when p >= 2") {
  SeededUniform rng(15);
  for (int k = 0; k < 500; ++k) {
    const double p = rng.next_in(2.0, 4.0);
    const Params params(p, rng.next_in(1.05, 3.0) * 4.0 / p);
    const double v1 = rng.next_in(1.0, 20.0);
    const double v2 = v1 + rng.next_in(0.01, 5.0);
    CHECK(H_dist(params, v2) > H_dist(params, v1));
  }
}

TEST_CASE("V is increasing for pq > 4 when q <= 2") {
  SeededUniform rng(16);
  for (int k = 0; k < 500; ++k) {
    const double q = rng.next_in(0.5, 2.0);
    const Params params(rng.next_in(1.05, 3.0) * 4.0 / q, q);
    const double u1 = rng.next_in(1.0, 20.0);
    const double u2 = u1 + rng.next_in(0.01, 5.0);
    CHECK(V_dist(params, u2) > V_dist(params, u1));
  }
}

TEST_CASE("H and V are not monotone in general for pq > 4") {
  // Counterexamples outside the ranges above.
  CHECK(H_dist(Params(1, 5), 1.0) > H_dist(Params(1, 5), 1.1));
  CHECK(V_dist(Params(3, 3), 1.001) < V_dist(Params(3, 3), 1.0));
}

TEST_CASE("H and V at pq = 4 are non-decreasing") {
  for (double p : {0.5, 1.0, 2.0, 2.5, 4.0}) {
    const Params params(p, 4.0 / p);
    double prev_h = -1e300;
    double prev_v = -1e300;
    for (double w = 1.0; w < 50.0; w += 0.25) {
      const double h = H_dist(params, w);
      const double vv = V_dist(params, w);
      if (p >= 2.0) CHECK(h >= prev_h - 1e-12 * std::abs(h));
      if (4.0 / p <= 2.0) CHECK(vv >= prev_v - 1e-12 * std::abs(vv));
      prev_h = h;
      prev_v = vv;
    }
  }
}

TEST_CASE("mutations swap sides of their fixed curves") {
  SeededUniform rng(17);
  for (int k = 0; k < 1000; ++k) {
    const Params params(rng.next_in(0.2, 4), rng.next_in(0.2, 4));
    const PointPos pt(rng.next_in(0.1, 5), rng.next_in(0.1, 5));
    const auto fc1 = fixed_curves(params, pt.y()).c1_x;
    const auto img1 = mu1_x(params, pt);
    if (pt.x() < fc1 * (1 - 1e-12)) CHECK(img1.x() > fc1);
    if (pt.x() > fc1 * (1 + 1e-12)) CHECK(img1.x() < fc1);
    const auto fc2 = fixed_curves(params, pt.x()).c2_y;
    const auto img2 = mu2_x(params, pt);
    if (pt.y() < fc2 * (1 - 1e-12)) CHECK(img2.y() > fc2);
    if (pt.y() > fc2 * (1 + 1e-12)) CHECK(img2.y() < fc2);
  }
}

TEST_CASE("u grows past 1e6 within 200 steps for pq > 4") {
  SeededUniform rng(18);
  for (int k = 0; k < 100; ++k) {
    const double p = rng.next_in(0.5, 4.0);
    const Params params(p, rng.next_in(1.05, 3.0) * 4.0 / p);
    PointPos pt(rng.next_in(0.2, 5), rng.next_in(0.2, 5));
    bool exceeded = false;
    for (int n = 0; n < 200 && !exceeded; ++n) {
      pt = mu_x(params, pt);
      exceeded = to_uv(params, pt).u() > 1e6;
    }
    CHECK(exceeded);
  }
}

TEST_CASE("u increments increase along orbits started in region III") {
  SeededUniform rng(19);
  int tried = 0;
  for (int k = 0; k < 2000 && tried < 200; ++k) {
    const double p = rng.next_in(0.5, 4.0);
    const Params params(p, rng.next_in(1.05, 3.0) * 4.0 / p);
    const UVPoint start(rng.next_in(0.1, 3), rng.next_in(0.1, 30));
    if (region_uv(params, start) != UVRegion::III) continue;
    ++tried;
    UVPoint a = start;
    UVPoint b = mu_uv(params, a);
    UVPoint c = mu_uv(params, b);
    CHECK(c.u() - b.u() > b.u() - a.u());
  }
  CHECK(tried > 50);
}

TEST_CASE("symplectic residual") {
  CHECK(symplectic_residual_x(Params(1.2734, 0.8421), PointPos(1, 1)) < 1e-4);
  CHECK(symplectic_residual_x(Params(1, 1), PointPos(2, 3)) < 1e-4);
  const PositiveMap identity = [](const PointPos& z) { return z; };
  CHECK(log_jacobian_residual(identity, PointPos(2, 3), 1e-6) < 1e-10);

  SeededUniform rng(20);
  for (int k = 0; k < 10; ++k) {
    const Params params(rng.next_in(0.2, 4), rng.next_in(0.2, 4));
    for (int i = 0; i < 100; ++i) {
      const double x = rng.next_in(0.2, 5);
      const double y = rng.next_in(0.2, 5);
      CHECK(symplectic_residual_x(params, PointPos(x, y)) < 1e-4);
      const auto j = oracle::log_jacobian(params.p(), params.q(), x, y);
      CHECK(std::abs(j[0] * j[3] - j[1] * j[2] - 1.0) < 1e-12);
    }
  }
}
