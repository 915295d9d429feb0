#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <vector>

namespace rootarr {

/// E8 is the largest supported rank.
inline constexpr int kMaxRank = 8;

/// Integer coordinates in a simple-root basis; entries past the rank are zero.
using Coordinates = std::array<int, kMaxRank>;

/// Incrementally built row-echelon basis over the integers.
///
/// Elimination is fraction-free: reducing v by a row r with pivot p replaces v
/// by r[p]*v - v[p]*r, and every stored row is divided by the gcd of its
/// entries, so entries stay tiny for root coordinates and no rationals appear.
/// Rows are reduced against all earlier rows on insertion, so a single pass in
/// insertion order clears every pivot column.
class EchelonBasis {
 public:
  using Row = std::array<std::int64_t, kMaxRank>;

  explicit EchelonBasis(int dim) : dim_(dim) {}

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int rank() const { return static_cast<int>(rows_.size()); }

  /// True iff v lies in the rational span of the rows.
  [[nodiscard]] bool contains(const Coordinates& v) const { return is_zero(reduce(v)); }

  /// Adds v; returns true iff the rank went up.
  bool insert(const Coordinates& v) {
    Row r = reduce(v);
    int p = first_nonzero(r);
    if (p < 0) return false;
    if (r[p] < 0)
      for (int j = 0; j < dim_; ++j) r[j] = -r[j];
    rows_.push_back(r);
    pivots_.push_back(p);
    return true;
  }

 private:
  Row reduce(const Coordinates& v) const {
    Row x{};
    for (int j = 0; j < dim_; ++j) x[j] = v[j];
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const int p = pivots_[k];
      if (x[p] == 0) continue;
      const std::int64_t a = rows_[k][p], b = x[p];
      for (int j = 0; j < dim_; ++j) x[j] = a * x[j] - b * rows_[k][j];
      normalize(x);
    }
    return x;
  }

  void normalize(Row& x) const {
    std::int64_t g = 0;
    for (int j = 0; j < dim_; ++j) g = std::gcd(g, x[j]);
    if (g > 1)
      for (int j = 0; j < dim_; ++j) x[j] /= g;
  }

  int first_nonzero(const Row& x) const {
    for (int j = 0; j < dim_; ++j)
      if (x[j] != 0) return j;
    return -1;
  }

  bool is_zero(const Row& x) const { return first_nonzero(x) < 0; }

  int dim_;
  std::vector<Row> rows_;
  std::vector<int> pivots_;
};

/// Rank of a list of integer vectors of the given dimension.
inline int integer_rank(std::span<const Coordinates> vectors, int dim) {
  EchelonBasis b(dim);
  for (const auto& v : vectors) b.insert(v);
  return b.rank();
}

}  // namespace rootarr
