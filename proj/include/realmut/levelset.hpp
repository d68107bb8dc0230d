#pragma once

#include <optional>
#include <vector>

#include "realmut/params.hpp"
#include "realmut/render.hpp"

namespace realmut {

/// Pieces of the level curve phi = c, one polyline per conic piece, ordered
/// counter-clockwise from the positive s-axis. Bounded pieces are sampled in
/// full. Unbounded pieces (pq >= 4, fourth quadrant) run from their axis
/// point out to sup-norm `extent`, which defaults to
/// 4 * max(sqrt(c/p), sqrt(c/q)). Throws DomainError if c <= 0 and
/// std::invalid_argument if samples_per_piece < 2.
std::vector<Polyline> levelset_points(const Params& params, double c,
                                      int samples_per_piece,
                                      std::optional<double> extent = std::nullopt,
                                      const Tolerances& tol = {});

}  // namespace realmut
