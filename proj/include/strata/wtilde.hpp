#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "strata/homology.hpp"
#include "strata/psets.hpp"
#include "strata/relations.hpp"
#include "strata/trees.hpp"

namespace strata {

/// A rational combination of pair labels. Coefficients have denominator dividing 2 and are
/// stored exactly as integer multiples of 1/2.
class PVector {
 public:
  void add(const PairLabel& p, std::int64_t halves);
  PVector& operator+=(const PVector& o);
  PVector scaled(std::int64_t factor) const;

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  /// Coefficient of p, in units of 1/2.
  std::int64_t halves(const PairLabel& p) const;
  const std::map<PairLabel, std::int64_t>& terms() const { return terms_; }

  /// The component on pairs with exactly b marks outside P1 ∪ P2.
  PVector restricted_to_inner_level(int n, int b) const;
  /// Largest |coefficient|, in units of 1/2.
  std::int64_t max_abs_halves() const;

  bool operator==(const PVector&) const = default;

 private:
  std::map<PairLabel, std::int64_t> terms_;
};

/// "3/2", "-1/2", "2" style rendering of a coefficient given in halves.
std::string format_halves(std::int64_t halves);

/// W_n: the pair label of a tree with exactly two fat vertices.
/// Throws DomainError unless filtration_level(t) == 2.
PairLabel w_map(const MarkedTree& t);

/// min{s1 - a1, s2 - a2}, where P1 is a union of s1 parts of `parts` and s2 = #parts - s1.
/// Throws DomainError if P1 is not a union of parts or P1 ⊔ P2 does not cover them.
int e_pi(std::span<const MarkSet> parts, const PairLabel& gamma);

/// W̃_n on a single stratum: the signed half-weighted sum over level-0 pair labels compatible
/// with the fat vertex for level 1, W_n(t) for level 2, zero otherwise.
PVector wtilde(const MarkedTree& t);

/// W̃_n applied to a relation.
PVector wtilde(const KMRelation& rel);

struct RelationFailure {
  KMRelation relation;
  PVector residual;
};

struct KillReport {
  int n = 0, k = 0;
  std::size_t relations_checked = 0;
  /// Largest |coefficient| on level-0 pair labels, in halves.
  std::int64_t max_residual_halves = 0;
  std::vector<RelationFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Applies W̃_n to every Kontsevich–Manin relation of S_{k,n} and checks that the
/// level-0 component vanishes exactly. Requires 2 <= k <= n - 4.
KillReport verify_relations_killed(int n, int k);

struct ForgetfulMismatch {
  MarkedTree tree;
  std::optional<PairLabel> via_trees;  // W_{n,b}(π(σ)), nullopt for zero
  std::optional<PairLabel> via_pairs;  // π(W_{n+1,b+1}(σ))
  std::string reason;
};

struct ForgetfulReport {
  int n = 0, k = 0, b = 0;
  std::size_t trees_checked = 0;
  std::size_t nonzero_paths = 0;
  std::vector<ForgetfulMismatch> mismatches;
  bool passed() const { return mismatches.empty(); }
};

/// Checks the forgetful square on every tree of (S²_{k,n+1})^{b+1}: forgetting mark n+1
/// commutes with W. Also checks that trees with n+1 ∈ P1 ∪ P2 push forward to a contracted
/// stratum or into (S²_{k,n})^{≥b+1}.
ForgetfulReport verify_forgetful_square(int n, int k, int b);

struct RewriteMove {
  enum class Kind { kTrivalentRearrange, kKMSwap };
  Kind kind = Kind::kTrivalentRearrange;
  /// Rearrange: marks of the rearranged trivalent region.
  MarkSet region;
  /// KM swap (AB|C e T) = (AC|B e T) at a fat vertex: the flags involved and the flag e toward
  /// the other fat vertex.
  MarkSet a, b, c, e;
  /// Edge changes, as normalized splits.
  std::vector<Split> removed, added;
};

/// Applies a move's edge changes. Throws DomainError if a removed split is absent.
MarkedTree apply_move(const MarkedTree& t, const RewriteMove& move);

/// The canonical representative of a fiber of W_{n,b}: at each fat vertex the first a_i + 1
/// marks of P_i as half-edges and the rest combed into a left caterpillar; the middle marks
/// on a caterpillar path between the fat vertices.
MarkedTree standard_form(const PairLabel& p, int n);

struct RewriteResult {
  MarkedTree sigma0;
  std::vector<RewriteMove> moves;
};

/// Rewrites a level-2 tree to standard_form(w_map(t)) by trivalent rearrangements and
/// KM swaps; replaying `moves` from t reproduces sigma0.
RewriteResult rewrite_to_standard(const MarkedTree& t);

struct RewriteReport {
  int n = 0, k = 0;
  std::size_t trees_checked = 0;
  std::size_t moves_checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// For the given trees of S²_{k,n} (all of them when `sample` is empty): the rewrite ends at
/// the standard form of its W-image, replays, and every move preserves the class in the
/// relevant quotient (H for rearrangements, (Q²)^b for KM swaps).
RewriteReport verify_rewrite(Workbench& wb, int n, int k, std::optional<std::size_t> sample = std::nullopt,
                             std::uint64_t seed = 1);

}  // namespace strata
