#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "realmut/params.hpp"

namespace realmut {

using MatrixRow = std::array<double, 2>;

/// A 2x2 exchange block with zero diagonal and opposite-signed off-diagonal
/// entries, extended by any number of real coefficient rows.
class ExtendedExchangeMatrix {
 public:
  ExtendedExchangeMatrix(std::array<MatrixRow, 2> top,
                         std::vector<MatrixRow> rows);

  /// Top block (0, p; -q, 0).
  static ExtendedExchangeMatrix b_form(const Params& params,
                                       std::vector<MatrixRow> rows);
  /// Top block (0, -p; q, 0).
  static ExtendedExchangeMatrix b_prime_form(const Params& params,
                                             std::vector<MatrixRow> rows);

  const std::array<MatrixRow, 2>& top() const noexcept { return top_; }
  const std::vector<MatrixRow>& rows() const noexcept { return rows_; }

  /// Row i of the full (2 + l) x 2 matrix.
  const MatrixRow& row(std::size_t i) const;
  std::size_t row_count() const noexcept { return 2 + rows_.size(); }

  bool all_finite() const noexcept;

  friend bool operator==(const ExtendedExchangeMatrix&,
                         const ExtendedExchangeMatrix&) = default;

 private:
  std::array<MatrixRow, 2> top_;
  std::vector<MatrixRow> rows_;
};

/// Matrix mutation in direction k in {1, 2}: entries in row or column k
/// change sign, every other b_ij becomes b_ij + sign(b_ik) [b_ik b_kj]_+.
ExtendedExchangeMatrix mutate(const ExtendedExchangeMatrix& mat, int k);

enum class ClosureStop {
  Closed,     // no unvisited neighbour remained
  CapReached, // `cap` distinct matrices were found first
  Overflow,   // a mutation produced a non-finite entry
};

const char* to_string(ClosureStop s) noexcept;

struct MutationClassResult {
  std::vector<ExtendedExchangeMatrix> matrices;  // BFS discovery order
  bool complete = false;
  ClosureStop stop = ClosureStop::Closed;
};

inline constexpr double kDefaultClassTol = 1e-9;
inline constexpr std::size_t kDefaultClassCap = 100'000;

/// True when every entry agrees within tol * max(1, |a|, |b|).
bool approx_equal(const ExtendedExchangeMatrix& a,
                  const ExtendedExchangeMatrix& b, double tol);

/// Breadth-first closure of `mat` under both mutations, identifying matrices
/// that agree entrywise within `tol`.
MutationClassResult mutation_class(const ExtendedExchangeMatrix& mat,
                                   double tol = kDefaultClassTol,
                                   std::size_t cap = kDefaultClassCap);

}  // namespace realmut
