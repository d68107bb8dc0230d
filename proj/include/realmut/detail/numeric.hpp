#pragma once

#include <algorithm>
#include <cmath>

namespace realmut::detail {

inline double plus_part(double x) noexcept { return std::max(x, 0.0); }

/// base^exponent; small non-negative integer exponents use repeated
/// multiplication, everything else goes through std::pow.
inline double real_pow(double base, double exponent) noexcept {
  if (exponent == 1.0) return base;
  if (exponent == 2.0) return base * base;
  if (exponent == 3.0) return base * base * base;
  if (exponent == 4.0) {
    const double sq = base * base;
    return sq * sq;
  }
  if (exponent == 0.0) return 1.0;
  return std::pow(base, exponent);
}

// Error-free transforms used to evaluate the quadratic invariants with a
// single final rounding.
struct TwoTerm {
  double hi;
  double lo;
};

inline TwoTerm two_sum(double a, double b) noexcept {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline TwoTerm two_prod(double a, double b) noexcept {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

/// Double-double accumulator; enough for sums of a handful of exact products.
class Compensated {
 public:
  void add(double x) noexcept {
    const TwoTerm s = two_sum(hi_, x);
    hi_ = s.hi;
    lo_ += s.lo;
  }

  /// Adds a*b*c with the products kept to double-double accuracy.
  void add_product3(double a, double b, double c) noexcept {
    const TwoTerm ab = two_prod(a, b);
    const TwoTerm hi = two_prod(ab.hi, c);
    add(hi.hi);
    add(hi.lo);
    add(ab.lo * c);
  }

  double value() const noexcept { return hi_ + lo_; }

 private:
  double hi_ = 0.0;
  double lo_ = 0.0;
};

/// a*d - b*c with Kahan's FMA correction.
inline double det2(double a, double b, double c, double d) noexcept {
  const double w = b * c;
  const double e = std::fma(-b, c, w);
  const double f = std::fma(a, d, -w);
  return f + e;
}

}  // namespace realmut::detail
