#include "realmut/orbit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

#include "realmut/detail/numeric.hpp"
#include "realmut/errors.hpp"
#include "realmut/xmap.hpp"

namespace realmut {

const char* to_string(OrbitKind k) noexcept {
  return k == OrbitKind::Rational ? "rational" : "tropical";
}

namespace {

StepDiagnostics diagnose(const Params& params, OrbitKind kind,
                         const Coords& c) {
  StepDiagnostics d;
  if (kind == OrbitKind::Tropical) {
    const PointPL pt(c[0], c[1]);
    d.phi = phi(params, pt);
    d.radius = pt.norm_inf();
    if (pt.s() != 0.0 || pt.t() != 0.0) {
      d.polar_angle = polar_angle(params, pt).theta;
    }
    d.sign = sign_pair(pt);
  } else {
    d.radius = std::max(std::abs(std::log(c[0])), std::abs(std::log(c[1])));
    d.sign = {Sign::Positive, Sign::Positive};
  }
  d.log_radius = std::log1p(d.radius);
  return d;
}

// Tropical state carried in double-double so rounding does not accumulate
// along the orbit; the stored points are the rounded state.
struct TropicalState {
  detail::TwoTerm s;
  detail::TwoTerm t;
};

detail::TwoTerm dd_add(detail::TwoTerm a, detail::TwoTerm b) {
  const detail::TwoTerm sum = detail::two_sum(a.hi, b.hi);
  const double hi = sum.hi;
  const double lo = sum.lo + a.lo + b.lo;
  const double r = hi + lo;
  return {r, lo - (r - hi)};
}

// c * [x]_+ in double-double.
detail::TwoTerm dd_scaled_plus(double c, detail::TwoTerm x) {
  if (!(x.hi > 0.0)) return {0.0, 0.0};
  detail::TwoTerm prod = detail::two_prod(c, x.hi);
  prod.lo += c * x.lo;
  return prod;
}

detail::TwoTerm dd_neg(detail::TwoTerm x) { return {-x.hi, -x.lo}; }

void tropical_step(const Params& params, TropicalState& st) {
  // mu1 then mu2.
  const detail::TwoTerm t1 = dd_add(st.t, dd_scaled_plus(params.p(), st.s));
  const detail::TwoTerm s1 = dd_neg(st.s);
  st.s = dd_add(s1, dd_scaled_plus(params.q(), t1));
  st.t = dd_neg(t1);
  if (!std::isfinite(st.s.hi) || !std::isfinite(st.t.hi)) {
    throw RangeError("tropical iterate is not finite");
  }
}

Coords rational_step(const Params& params, const Coords& c) {
  const PointPos next = mu_x(params, PointPos(c[0], c[1]));
  return {next.x(), next.y()};
}

void validate_start(OrbitKind kind, const Coords& start) {
  if (kind == OrbitKind::Rational) {
    if (!(start[0] > 0.0 && start[1] > 0.0 && std::isfinite(start[0]) &&
          std::isfinite(start[1]))) {
      throw DomainError("rational orbit start must lie in the open positive quadrant");
    }
  } else if (!std::isfinite(start[0]) || !std::isfinite(start[1])) {
    throw DomainError("tropical orbit start must be finite");
  }
}

}  // namespace

std::optional<Truncation> stream_orbit(const Params& params, OrbitKind kind,
                                       Coords start, std::size_t steps,
                                       const OrbitVisitor& visit) {
  validate_start(kind, start);
  Coords cur = start;
  TropicalState st{{start[0], 0.0}, {start[1], 0.0}};
  visit(0, cur, diagnose(params, kind, cur));
  for (std::size_t i = 1; i <= steps; ++i) {
    try {
      if (kind == OrbitKind::Tropical) {
        tropical_step(params, st);
        cur = {st.s.hi, st.t.hi};
      } else {
        cur = rational_step(params, cur);
      }
    } catch (const RangeError& e) {
      return Truncation{i, e.what()};
    }
    visit(i, cur, diagnose(params, kind, cur));
  }
  return std::nullopt;
}

Orbit iterate_orbit(const Params& params, OrbitKind kind, Coords start,
                    std::size_t steps) {
  if (steps >= kMaxStoredPoints) {
    throw std::length_error(
        "iterate_orbit: too many steps to store; use stream_orbit");
  }
  Orbit orbit{params, kind, start, {}, {}, std::nullopt};
  orbit.points.reserve(steps + 1);
  orbit.diagnostics.reserve(steps + 1);
  orbit.truncation = stream_orbit(
      params, kind, start, steps,
      [&orbit](std::size_t, const Coords& c, const StepDiagnostics& d) {
        orbit.points.push_back(c);
        orbit.diagnostics.push_back(d);
      });
  return orbit;
}

const char* verdict_name(const GrowthVerdict& v) noexcept {
  switch (v.index()) {
    case 0:
      return "bounded_like";
    case 1:
      return "linear";
    default:
      return "exponential";
  }
}

double verdict_value(const GrowthVerdict& v) noexcept {
  return std::visit(
      [](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, BoundedLike>) return x.max_log_radius;
        if constexpr (std::is_same_v<T, Linear>) return x.rate;
        if constexpr (std::is_same_v<T, Exponential>) return x.ratio;
      },
      v);
}

namespace {

struct LineFit {
  double slope = 0.0;
  double r2 = 0.0;
};

LineFit least_squares(std::size_t first, const std::vector<double>& y) {
  const double n = static_cast<double>(y.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    mx += static_cast<double>(first + i);
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double dx = static_cast<double>(first + i) - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LineFit fit;
  if (sxx > 0.0) fit.slope = sxy / sxx;
  if (sxx > 0.0 && syy > 0.0) fit.r2 = (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace

GrowthVerdict growth_classification(const Orbit& orbit) {
  const std::size_t n = orbit.points.size();
  std::size_t first = n / 2;
  if (orbit.truncation) {
    // The orbit left the representable range, so use every point it has.
    if (n < 3) throw DomainError("growth_classification: orbit too short");
    first = 0;
  } else if (n < kMinClassifiedLength) {
    throw DomainError("growth_classification: orbit too short");
  }

  std::vector<double> logs;
  std::vector<double> radii;
  double max_radius = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    logs.push_back(orbit.diagnostics[i].log_radius);
    max_radius = std::max(max_radius, orbit.diagnostics[i].radius);
  }
  // Scaled so squared deviations stay finite for very large radii.
  const double scale = max_radius > 0.0 ? max_radius : 1.0;
  for (std::size_t i = first; i < n; ++i) {
    radii.push_back(orbit.diagnostics[i].radius / scale);
  }

  const LineFit log_fit = least_squares(first, logs);
  const LineFit lin_fit = least_squares(first, radii);

  if (log_fit.slope > std::log1p(kExponentialDelta) &&
      log_fit.r2 > lin_fit.r2) {
    return Exponential{std::exp(log_fit.slope)};
  }
  if (lin_fit.slope > 0.0 && lin_fit.r2 >= kLinearMinR2) {
    return Linear{lin_fit.slope * scale};
  }
  double max_log = 0.0;
  for (const auto& d : orbit.diagnostics) max_log = std::max(max_log, d.log_radius);
  return BoundedLike{max_log};
}

double conserved_drift(const Orbit& orbit) {
  if (orbit.kind != OrbitKind::Tropical) {
    throw DomainError("conserved_drift: requires a tropical orbit");
  }
  if (orbit.diagnostics.empty()) return 0.0;
  const double phi0 = *orbit.diagnostics.front().phi;
  const double denom = std::max(1.0, std::abs(phi0));
  double drift = 0.0;
  for (const auto& d : orbit.diagnostics) {
    drift = std::max(drift, std::abs(*d.phi - phi0) / denom);
  }
  return drift;
}

std::optional<std::size_t> monotonic_angle_audit(const Orbit& orbit,
                                                 const Tolerances& tol) {
  if (orbit.kind != OrbitKind::Tropical) {
    throw DomainError("monotonic_angle_audit: requires a tropical orbit");
  }
  if (classify_regime(orbit.params, tol) == Regime::SubCritical) {
    throw RegimeError("monotonic_angle_audit: requires pq >= 4");
  }
  for (const auto& d : orbit.diagnostics) {
    if (!d.polar_angle) {
      throw DomainError("monotonic_angle_audit: orbit passes through the origin");
    }
  }
  for (std::size_t i = 1; i < orbit.diagnostics.size(); ++i) {
    const double before = *orbit.diagnostics[i - 1].polar_angle;
    const double after = *orbit.diagnostics[i].polar_angle;
    if (after > before + tol.eq_tol() * std::max(1.0, std::abs(before))) {
      return i;
    }
  }
  return std::nullopt;
}

double SeededUniform::next() {
  // Top 53 bits; the standard distributions are implementation-defined.
  return static_cast<double>(engine_() >> 11) * 0x1p-53;
}

namespace {

int verdict_rank(const GrowthVerdict& v) { return static_cast<int>(v.index()); }

GrowthVerdict dominant(const GrowthVerdict& a, const GrowthVerdict& b) {
  if (verdict_rank(a) != verdict_rank(b)) {
    return verdict_rank(a) > verdict_rank(b) ? a : b;
  }
  return verdict_value(a) >= verdict_value(b) ? a : b;
}

std::vector<double> grid_axis(Range r, std::size_t resolution) {
  std::vector<double> out(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    out[i] = resolution == 1
                 ? r.lo
                 : r.lo + (r.hi - r.lo) * static_cast<double>(i) /
                              static_cast<double>(resolution - 1);
  }
  return out;
}

std::vector<Coords> starts_for_cell(const StartPolicy& policy, std::size_t i,
                                    std::size_t j) {
  if (const auto* fixed = std::get_if<FixedStarts>(&policy)) {
    return fixed->points;
  }
  const auto& random = std::get<RandomStarts>(policy);
  std::seed_seq seq{static_cast<std::uint32_t>(random.seed),
                    static_cast<std::uint32_t>(random.seed >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
  std::array<std::uint64_t, 1> seed_words{};
  seq.generate(reinterpret_cast<std::uint32_t*>(seed_words.data()),
               reinterpret_cast<std::uint32_t*>(seed_words.data()) + 2);
  SeededUniform rng(seed_words[0]);
  std::vector<Coords> out;
  out.reserve(random.count);
  for (std::size_t k = 0; k < random.count; ++k) {
    const double a = rng.next_in(random.first.lo, random.first.hi);
    const double b = rng.next_in(random.second.lo, random.second.hi);
    out.push_back({a, b});
  }
  return out;
}

}  // namespace

ScanTable scan_grid(Range p_range, Range q_range, std::size_t resolution,
                    OrbitKind kind, std::size_t steps,
                    const StartPolicy& start_policy, unsigned threads) {
  if (resolution < 1) throw DomainError("scan_grid: resolution must be >= 1");
  for (Range r : {p_range, q_range}) {
    if (!(r.lo > 0.0) || !(r.hi >= r.lo)) {
      throw DomainError("scan_grid: ranges must be positive with lo <= hi");
    }
  }
  if (const auto* fixed = std::get_if<FixedStarts>(&start_policy);
      fixed && fixed->points.empty()) {
    throw DomainError("scan_grid: no start points");
  }

  const auto ps = grid_axis(p_range, resolution);
  const auto qs = grid_axis(q_range, resolution);
  const std::size_t total = resolution * resolution;
  std::vector<std::optional<GrowthVerdict>> verdicts(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const std::size_t i = idx / resolution;
      const std::size_t j = idx % resolution;
      try {
        const Params params(ps[i], qs[j]);
        std::optional<GrowthVerdict> cell;
        for (const Coords& start : starts_for_cell(start_policy, i, j)) {
          const Orbit orbit = iterate_orbit(params, kind, start, steps);
          GrowthVerdict v = growth_classification(orbit);
          cell = cell ? dominant(*cell, v) : v;
        }
        verdicts[idx] = cell;
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
  };

  unsigned n_threads =
      threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, total));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ScanTable table{kind, resolution, steps, {}};
  table.cells.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (errors[idx]) std::rethrow_exception(errors[idx]);
    table.cells.push_back({idx / resolution, idx % resolution,
                           ps[idx / resolution], qs[idx % resolution],
                           *verdicts[idx]});
  }
  return table;
}

}  // namespace realmut
