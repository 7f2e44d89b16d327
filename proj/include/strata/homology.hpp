#pragma once

#include <array>
#include <climits>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "strata/cache.hpp"
#include "strata/character.hpp"
#include "strata/exact_linalg.hpp"
#include "strata/trees.hpp"

namespace strata {

/// Position of a stratum in the filtration: its level r, refined by the inner level b when r == 2.
struct BlockKey {
  int level = 0;
  int inner = 0;

  static constexpr BlockKey end() { return {INT_MAX, 0}; }
  auto operator<=>(const BlockKey&) const = default;
};

BlockKey block_of(const MarkedTree& t);

/// S_{k,n}, its Kontsevich–Manin relation matrix, and a quotient basis adapted to the
/// filtration, certified by two primes with identical pivot sets.
///
/// Columns are eliminated in increasing BlockKey order, so for every block key B the free
/// columns at or after B form a basis of the image of those strata in H_{2k}.
class StrataSystem {
 public:
  StrataSystem(int n, int k, std::vector<MarkedTree> strata, SparseIntMatrix relations, PrimeSource& primes);

  int n() const { return n_; }
  int k() const { return k_; }
  const StrataIndex& strata() const { return index_; }
  const SparseIntMatrix& relations() const { return relations_; }
  BlockKey block(std::size_t id) const { return blocks_[id]; }
  const QuotientBasis& basis(int which = 0) const { return bases_[which]; }

  std::size_t betti() const { return bases_[0].dimension(); }
  /// First free index whose column lies in a block >= key.
  std::uint32_t free_begin(BlockKey key) const;
  /// Number of free columns with block in [from, to).
  std::size_t free_count(BlockKey from, BlockKey to) const { return free_begin(to) - free_begin(from); }

  /// Trace of g on span(blocks >= from) / span(blocks >= to), lifted and checked at both primes.
  std::int64_t trace(const Permutation& g, BlockKey from, BlockKey to) const;

  /// True iff v lies in (relations) + span(strata in blocks >= modulo), at both primes.
  bool congruent_to_zero(const SparseIntVector& v, BlockKey modulo = BlockKey::end()) const;

 private:
  int n_, k_;
  StrataIndex index_;
  SparseIntMatrix relations_;
  std::vector<BlockKey> blocks_;
  std::array<QuotientBasis, 2> bases_;
  std::vector<BlockKey> free_blocks_;  // block of each free column, nondecreasing
};

struct WorkbenchOptions {
  std::uint64_t seed = 0x5eed;
  /// Cross-check every rank with fraction-free elimination when n <= audit_max_n.
  bool exact_audit = false;
  int audit_max_n = 6;
  std::optional<std::filesystem::path> cache_dir;
};

/// Owns the prime source, the optional disk cache, and the StrataSystem of each (n, k).
class Workbench {
 public:
  explicit Workbench(WorkbenchOptions options = {});

  const WorkbenchOptions& options() const { return options_; }
  PrimeSource& primes() { return primes_; }
  const Cache* cache() const { return cache_ ? &*cache_ : nullptr; }

  std::vector<MarkedTree> strata(int n, int k);
  /// Relation matrix of S_{k,n}; empty (zero rows) when k = n - 3.
  SparseIntMatrix relations(int n, int k);
  const StrataSystem& system(int n, int k);

  /// rank_exact, plus a Bareiss cross-check in audit mode.
  std::size_t certified_rank(const SparseIntMatrix& m, int n);

 private:
  WorkbenchOptions options_;
  PrimeSource primes_;
  std::optional<Cache> cache_;
  std::map<std::pair<int, int>, std::unique_ptr<StrataSystem>> systems_;
};

struct GradedDims {
  int n = 0, k = 0;
  /// dims[r - 1] = dim Q^r_{k,n}
  std::vector<std::size_t> dims;
  bool operator==(const GradedDims&) const = default;
};

/// |S_{k,n}| - rank of the relation matrix.
std::size_t betti(Workbench& wb, int n, int k);

/// dim Q^r = span_dim(S^{≥r}) - span_dim(S^{≥r+1}); empty for k = 0.
GradedDims graded_dims(Workbench& wb, int n, int k);

/// dim (Q²_{k,n})^b for b = 0..n-k-4, via span dimensions of S^{≥3} ∪ (S²)^{≥b}.
std::vector<std::size_t> inner_graded_dims(Workbench& wb, int n, int k);

/// Whether two strata of the same S_{k,n} have equal class in H_{2k}.
bool class_equal(Workbench& wb, const MarkedTree& t1, const MarkedTree& t2);

/// Whether t1 - t2 vanishes in H_{2k} modulo the span of strata in blocks >= modulo
/// (e.g. {2, b+1} for equality in (Q²)^b).
bool class_equal_modulo(Workbench& wb, const MarkedTree& t1, const MarkedTree& t2, BlockKey modulo);

Character character_homology(Workbench& wb, int n, int k);

/// Character of Q^r_{k,n} = Q^{≥r} / Q^{≥r+1}.
Character character_graded(Workbench& wb, int n, int k, int r);

}  // namespace strata
