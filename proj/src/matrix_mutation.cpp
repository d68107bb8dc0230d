#include "realmut/matrix_mutation.hpp"

#include <cmath>
#include <cstdint>
#include <deque>
#include <unordered_map>

#include "realmut/errors.hpp"

namespace realmut {

ExtendedExchangeMatrix::ExtendedExchangeMatrix(std::array<MatrixRow, 2> top,
                                               std::vector<MatrixRow> rows)
    : top_(top), rows_(std::move(rows)) {
  if (top_[0][0] != 0.0 || top_[1][1] != 0.0) {
    throw DomainError("exchange block must have a zero diagonal");
  }
  if (top_[0][1] * top_[1][0] > 0.0) {
    throw DomainError("exchange block off-diagonal entries must have opposite sign");
  }
}

ExtendedExchangeMatrix ExtendedExchangeMatrix::b_form(
    const Params& params, std::vector<MatrixRow> rows) {
  return {{MatrixRow{0.0, params.p()}, MatrixRow{-params.q(), 0.0}},
          std::move(rows)};
}

ExtendedExchangeMatrix ExtendedExchangeMatrix::b_prime_form(
    const Params& params, std::vector<MatrixRow> rows) {
  return {{MatrixRow{0.0, -params.p()}, MatrixRow{params.q(), 0.0}},
          std::move(rows)};
}

const MatrixRow& ExtendedExchangeMatrix::row(std::size_t i) const {
  if (i < 2) return top_[i];
  return rows_.at(i - 2);
}

bool ExtendedExchangeMatrix::all_finite() const noexcept {
  auto finite = [](const MatrixRow& r) {
    return std::isfinite(r[0]) && std::isfinite(r[1]);
  };
  if (!finite(top_[0]) || !finite(top_[1])) return false;
  for (const auto& r : rows_) {
    if (!finite(r)) return false;
  }
  return true;
}

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

ExtendedExchangeMatrix mutate(const ExtendedExchangeMatrix& mat, int k) {
  if (k != 1 && k != 2) throw DomainError("mutate: direction must be 1 or 2");
  const std::size_t kk = static_cast<std::size_t>(k - 1);
  const MatrixRow& pivot = mat.top()[kk];

  auto mutate_row = [&](const MatrixRow& r, std::size_t i) {
    MatrixRow out{};
    for (std::size_t j = 0; j < 2; ++j) {
      if (i == kk || j == kk) {
        out[j] = -r[j];
      } else {
        const double b_ik = r[kk];
        out[j] = r[j] + sgn(b_ik) * std::max(b_ik * pivot[j], 0.0);
      }
    }
    return out;
  };

  std::array<MatrixRow, 2> top{mutate_row(mat.top()[0], 0),
                               mutate_row(mat.top()[1], 1)};
  // The diagonal stays zero; normalize the sign of any -0.
  top[0][0] = 0.0;
  top[1][1] = 0.0;
  std::vector<MatrixRow> rows;
  rows.reserve(mat.rows().size());
  for (const MatrixRow& r : mat.rows()) rows.push_back(mutate_row(r, 2));
  return {top, std::move(rows)};
}

const char* to_string(ClosureStop s) noexcept {
  switch (s) {
    case ClosureStop::Closed:
      return "closed";
    case ClosureStop::CapReached:
      return "cap";
    case ClosureStop::Overflow:
      return "overflow";
  }
  return "?";
}

bool approx_equal(const ExtendedExchangeMatrix& a,
                  const ExtendedExchangeMatrix& b, double tol) {
  if (a.rows().size() != b.rows().size()) return false;
  for (std::size_t i = 0; i < a.row_count(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double x = a.row(i)[j];
      const double y = b.row(i)[j];
      const double scale = std::max({1.0, std::abs(x), std::abs(y)});
      if (!(std::abs(x - y) <= tol * scale)) return false;
    }
  }
  return true;
}

namespace {

// Entries are bucketed on a compressed axis that is the identity on [-1, 1]
// and logarithmic outside, so a relative tolerance becomes (at most twice) an
// absolute one. Cells are kBucketWidth wide; a coordinate that sits within
// the tolerance of a cell edge is also looked up in the neighbouring cell.
constexpr double kBucketWidth = 1e-6;

double compress(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return x;
  return std::copysign(1.0 + std::log(a), x);
}

using CellKey = std::vector<std::int64_t>;

struct CellKeyHash {
  std::size_t operator()(const CellKey& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::int64_t v : key) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) +
           (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

class ToleranceIndex {
 public:
  explicit ToleranceIndex(double tol) : tol_(tol), margin_(2.0 * tol + 1e-15) {}

  /// Index of a stored matrix within tolerance of `m`, or -1.
  long find(const ExtendedExchangeMatrix& m,
            const std::vector<ExtendedExchangeMatrix>& store) const {
    std::vector<double> coords = flatten(m);
    CellKey home(coords.size());
    std::vector<std::size_t> straddling;
    std::vector<std::int64_t> neighbour(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      const double scaled = coords[i] / kBucketWidth;
      const double cell = std::floor(scaled);
      home[i] = static_cast<std::int64_t>(cell);
      const double frac = (scaled - cell) * kBucketWidth;
      if (frac < margin_) {
        straddling.push_back(i);
        neighbour[i] = home[i] - 1;
      } else if (kBucketWidth - frac < margin_) {
        straddling.push_back(i);
        neighbour[i] = home[i] + 1;
      }
    }
    // Straddling more than a handful of edges at once is vanishingly rare;
    // cap the enumeration and treat the rest as their home cell.
    const std::size_t used = std::min<std::size_t>(straddling.size(), 12);
    for (std::uint32_t mask = 0; mask < (1u << used); ++mask) {
      CellKey key = home;
      for (std::size_t b = 0; b < used; ++b) {
        if (mask & (1u << b)) key[straddling[b]] = neighbour[straddling[b]];
      }
      const auto it = cells_.find(key);
      if (it == cells_.end()) continue;
      for (std::size_t idx : it->second) {
        if (approx_equal(store[idx], m, tol_)) return static_cast<long>(idx);
      }
    }
    return -1;
  }

  void insert(const ExtendedExchangeMatrix& m, std::size_t idx) {
    std::vector<double> coords = flatten(m);
    CellKey key(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      key[i] = static_cast<std::int64_t>(std::floor(coords[i] / kBucketWidth));
    }
    cells_[key].push_back(idx);
  }

 private:
  static std::vector<double> flatten(const ExtendedExchangeMatrix& m) {
    std::vector<double> out;
    out.reserve(2 * m.row_count());
    for (std::size_t i = 0; i < m.row_count(); ++i) {
      out.push_back(compress(m.row(i)[0]));
      out.push_back(compress(m.row(i)[1]));
    }
    return out;
  }

  double tol_;
  double margin_;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellKeyHash> cells_;
};

}  // namespace

MutationClassResult mutation_class(const ExtendedExchangeMatrix& mat,
                                   double tol, std::size_t cap) {
  if (cap < 1) throw DomainError("mutation_class: cap must be >= 1");
  if (!(tol >= 0.0)) throw DomainError("mutation_class: tol must be >= 0");
  MutationClassResult result;
  ToleranceIndex index(tol);
  result.matrices.push_back(mat);
  index.insert(mat, 0);
  std::deque<std::size_t> frontier{0};

  while (!frontier.empty()) {
    const std::size_t current = frontier.front();
    frontier.pop_front();
    for (int k = 1; k <= 2; ++k) {
      ExtendedExchangeMatrix next = mutate(result.matrices[current], k);
      if (!next.all_finite()) {
        result.complete = false;
        result.stop = ClosureStop::Overflow;
        return result;
      }
      if (index.find(next, result.matrices) >= 0) continue;
      if (result.matrices.size() >= cap) {
        result.complete = false;
        result.stop = ClosureStop::CapReached;
        return result;
      }
      result.matrices.push_back(std::move(next));
      index.insert(result.matrices.back(), result.matrices.size() - 1);
      frontier.push_back(result.matrices.size() - 1);
    }
  }
  result.complete = true;
  result.stop = ClosureStop::Closed;
  return result;
}

}  // namespace realmut
