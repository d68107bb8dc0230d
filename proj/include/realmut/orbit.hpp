#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "realmut/params.hpp"
#include "realmut/tropical.hpp"

namespace realmut {

enum class OrbitKind { Rational, Tropical };

const char* to_string(OrbitKind k) noexcept;

/// (x, y) for the rational map, (s, t) for the tropical one.
using Coords = std::array<double, 2>;

struct StepDiagnostics {
  std::optional<double> phi;          // tropical only
  double radius = 0.0;                // ||(s,t)||_inf or ||(log x, log y)||_inf
  double log_radius = 0.0;            // log(1 + radius)
  std::optional<double> polar_angle;  // tropical, away from the origin
  SignPair sign{Sign::Zero, Sign::Zero};
};

struct Truncation {
  std::size_t step;  // index of the iterate that could not be formed
  std::string reason;
};

struct Orbit {
  Params params;
  OrbitKind kind;
  Coords start;
  std::vector<Coords> points;
  std::vector<StepDiagnostics> diagnostics;
  std::optional<Truncation> truncation;
};

inline constexpr std::size_t kMaxStoredPoints = 1'000'000;

/// Records start and `steps` iterates with diagnostics. A range error ends
/// the orbit early and is recorded in `truncation`. Tropical orbits are
/// iterated in double-double and each stored point is the rounded state, so
/// points[i+1] agrees with mu_c(points[i]) to within rounding of the output.
Orbit iterate_orbit(const Params& params, OrbitKind kind, Coords start,
                    std::size_t steps);

using OrbitVisitor =
    std::function<void(std::size_t, const Coords&, const StepDiagnostics&)>;

/// Same iteration without retaining points; returns the truncation if any.
std::optional<Truncation> stream_orbit(const Params& params, OrbitKind kind,
                                       Coords start, std::size_t steps,
                                       const OrbitVisitor& visit);

struct BoundedLike {
  double max_log_radius;
};
struct Linear {
  double rate;
};
struct Exponential {
  double ratio;
};

/// BoundedLike is an empirical label, not a boundedness claim.
using GrowthVerdict = std::variant<BoundedLike, Linear, Exponential>;

const char* verdict_name(const GrowthVerdict& v) noexcept;
double verdict_value(const GrowthVerdict& v) noexcept;

inline constexpr std::size_t kMinClassifiedLength = 16;
inline constexpr double kExponentialDelta = 0.01;
inline constexpr double kLinearMinR2 = 0.9;

GrowthVerdict growth_classification(const Orbit& orbit);

/// max_i |phi_i - phi_0| / max(1, |phi_0|) over a tropical orbit.
double conserved_drift(const Orbit& orbit);

/// First index i whose polar angle exceeds the angle at i-1 by more than
/// eq_tol * max(1, |angle|); none when the sequence is non-increasing.
std::optional<std::size_t> monotonic_angle_audit(const Orbit& orbit,
                                                 const Tolerances& tol = {});

struct Range {
  double lo;
  double hi;
};

struct FixedStarts {
  std::vector<Coords> points;
};

struct RandomStarts {
  std::size_t count = 1;
  std::uint64_t seed = 0;
  Range first{0.5, 2.0};
  Range second{0.5, 2.0};
};

using StartPolicy = std::variant<FixedStarts, RandomStarts>;

struct ScanCell {
  std::size_t i;  // p index
  std::size_t j;  // q index
  double p;
  double q;
  GrowthVerdict verdict;
};

struct ScanTable {
  OrbitKind kind;
  std::size_t resolution;
  std::size_t steps;
  std::vector<ScanCell> cells;  // row-major in (i, j)
};

/// Grid of resolution x resolution cells; with resolution 1 the single cell
/// sits at the lower corner of both ranges. Cells are evaluated on up to
/// `threads` workers (0 picks the hardware concurrency).
ScanTable scan_grid(Range p_range, Range q_range, std::size_t resolution,
                    OrbitKind kind, std::size_t steps,
                    const StartPolicy& start_policy, unsigned threads = 0);

/// Deterministic uniform draws in [0, 1) from a 64-bit seed.
class SeededUniform {
 public:
  explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
  double next();
  double next_in(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace realmut
