#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace strata {

/// (column, coefficient) pairs sorted by column, no explicit zeros.
using SparseIntVector = std::vector<std::pair<std::uint32_t, std::int64_t>>;

/// Sorts by column, merges duplicates, and drops zeros.
void canonicalize(SparseIntVector& v);

class SparseIntMatrix {
 public:
  explicit SparseIntMatrix(std::size_t n_cols = 0) : n_cols_(n_cols) {}

  /// Canonicalizes and appends a row. Throws DomainError on a column index >= n_cols.
  void add_row(SparseIntVector row);

  std::size_t n_rows() const { return rows_.size(); }
  std::size_t n_cols() const { return n_cols_; }
  const std::vector<SparseIntVector>& rows() const { return rows_; }
  std::size_t nonzeros() const;

  /// This matrix with the given rows appended (M ⧺ V).
  SparseIntMatrix stacked(std::span<const SparseIntVector> extra) const;

  bool operator==(const SparseIntMatrix&) const = default;

 private:
  std::size_t n_cols_;
  std::vector<SparseIntVector> rows_;
};

/// Seeded source of random 62-bit primes.
class PrimeSource {
 public:
  explicit PrimeSource(std::uint64_t seed = 0x5eed, int bits = 62) : rng_(seed), bits_(bits) {}
  std::uint64_t next();

 private:
  std::mt19937_64 rng_;
  int bits_;
};

/// Rank over F_p by sparse elimination with Markowitz-style pivot choice
/// (sparsest active row, then its sparsest column).
std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint64_t p);

/// Rank over Q certified by two agreeing primes. On disagreement further primes are drawn
/// until the largest observed rank has been seen twice; throws CertificationError once
/// `max_primes` primes have been used without agreement.
std::size_t rank_exact(const SparseIntMatrix& m, PrimeSource& primes, int max_primes = 8);

/// Exact rank over Q by fraction-free (Bareiss) elimination on a dense big-integer copy.
/// Intended for audit runs on small matrices.
std::size_t rank_bareiss(const SparseIntMatrix& m);

/// rank(M ⧺ V) - rank(M), each rank certified as in rank_exact.
std::size_t span_dim_in_quotient(const SparseIntMatrix& m, std::span<const SparseIntVector> vectors,
                                 PrimeSource& primes);

/// Reduced row-echelon form of a matrix over F_p under a prescribed column order,
/// viewed as a basis of the quotient F_p^cols / rowspace.
///
/// Columns are eliminated in `order` (order[i] = original column at position i); pivots are
/// always the leftmost nonzero in that order, so the free columns lying in any suffix of the
/// order form a basis of the image of that suffix in the quotient. Free columns are
/// numbered 0.. in order of position.
class QuotientBasis {
 public:
  /// Residue vector on free columns: (free index, value) sorted by free index.
  using Coordinates = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

  static QuotientBasis build(const SparseIntMatrix& m, std::uint64_t p, std::span<const std::uint32_t> order = {});

  std::uint64_t prime() const { return prime_; }
  std::size_t n_cols() const { return is_pivot_.size(); }
  std::size_t rank() const { return pivot_cols_.size(); }
  std::size_t dimension() const { return free_cols_.size(); }
  /// Pivot columns (original indices) in order of position.
  const std::vector<std::uint32_t>& pivot_cols() const { return pivot_cols_; }
  /// Free columns (original indices) in order of position; free index i is free_cols()[i].
  const std::vector<std::uint32_t>& free_cols() const { return free_cols_; }
  bool is_pivot(std::uint32_t col) const { return is_pivot_[col]; }
  /// Free index of a free column.
  std::uint32_t free_index(std::uint32_t col) const { return free_index_[col]; }

  /// Image of v in the quotient, in free-column coordinates.
  Coordinates reduce(const SparseIntVector& v) const;
  /// Coordinate `free_idx` of the image of the unit vector on `col`.
  std::uint64_t unit_coordinate(std::uint32_t col, std::uint32_t free_idx) const;
  /// Reduced row for a pivot column: e_col + sum(value * e_free) lies in the row space.
  const Coordinates& reduced_row(std::uint32_t pivot_col) const { return reduced_[pivot_col]; }

 private:
  std::uint64_t prime_ = 0;
  std::vector<bool> is_pivot_;
  std::vector<std::uint32_t> free_index_;
  std::vector<std::uint32_t> pivot_cols_, free_cols_;
  std::vector<Coordinates> reduced_;  // indexed by original column; empty for free columns
};

}  // namespace strata
