#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "strata/mark_set.hpp"
#include "strata/permutation.hpp"

namespace strata {

/// An internal edge, recorded by the side of the bipartition not containing mark 1.
using Split = MarkSet;

/// Normalizes a side of an edge bipartition to the side not containing mark 1.
inline Split normalize_split(MarkSet side, int n) { return side.contains(1) ? side.complement(n) : side; }

/// A vertex of a stable tree. Each flag (edge or half-edge at the vertex) is identified by the
/// set of marks lying behind it, so the flags of a vertex partition {1..n}; singleton flags
/// are the marked half-edges.
struct Vertex {
  std::vector<MarkSet> flags;  // sorted by lex_less

  int valence() const { return static_cast<int>(flags.size()); }
  /// Marks carried directly by this vertex as half-edges.
  MarkSet half_edges() const;
  bool has_flag(MarkSet f) const;
  bool operator==(const Vertex&) const = default;
};

/// A stable tree with n labeled marks, keyed by its normalized split family.
class MarkedTree {
 public:
  /// Normalizes each split, sorts the family, and validates size bounds, pairwise
  /// compatibility, and uniqueness. Throws DomainError on invalid input.
  MarkedTree(int n, std::vector<MarkSet> splits);

  /// The one-vertex tree.
  static MarkedTree star(int n);

  int n() const { return n_; }
  /// Dimension k of the boundary stratum: n - 3 - #edges.
  int dimension() const { return n_ - 3 - static_cast<int>(splits_.size()); }
  const std::vector<Split>& splits() const { return splits_; }
  bool has_split(MarkSet side) const;

  /// Vertices reconstructed from the splits. The vertex carrying mark 1 comes first,
  /// then one vertex per split (the endpoint away from mark 1) in split order.
  std::vector<Vertex> vertices() const;

  /// "[[3,4,5],[4,5]]" style sorted split family.
  std::string canonical_form() const;

  bool operator==(const MarkedTree& o) const { return n_ == o.n_ && splits_ == o.splits_; }
  std::strong_ordering operator<=>(const MarkedTree& o) const;

 private:
  MarkedTree() = default;
  friend MarkedTree tree_from_canonical_splits(int n, std::vector<Split> splits);

  int n_ = 0;
  std::vector<Split> splits_;
};

struct MarkedTreeHash {
  std::size_t operator()(const MarkedTree& t) const noexcept;
};

/// Weakly decreasing nonzero values val(v) - 3.
struct ValencePartition {
  std::vector<int> parts;
  int total() const;
  bool operator==(const ValencePartition&) const = default;
};

/// All stable n-marked trees with n - 3 - k internal edges, in lexicographic order of
/// canonical form. Throws DomainError unless 3 <= n <= kMaxMarks and 0 <= k <= n - 3.
std::vector<MarkedTree> enumerate_strata(int n, int k);

ValencePartition valence_partition(const MarkedTree& t);

/// Number of parts of the valence partition (0 for trivalent trees).
int filtration_level(const MarkedTree& t);

/// Relabels mark m as g(m).
MarkedTree apply_permutation(const MarkedTree& t, const Permutation& g);

/// Replaces v by two vertices joined by a new edge, with flags_a on one side and
/// flags_b on the other. Throws DomainError unless the flags partition those of v and
/// each side has at least two flags.
MarkedTree split_vertex(const MarkedTree& t, const Vertex& v, std::span<const MarkSet> flags_a,
                        std::span<const MarkSet> flags_b);

/// Contracts the internal edge with the given (normalized) split.
MarkedTree contract_edge(const MarkedTree& t, Split edge);

/// The two-fat-vertex decomposition of a tree with filtration level 2.
struct TwoVertexDecomposition {
  MarkSet p1;
  int alpha1 = 0;
  MarkSet p2;
  int alpha2 = 0;
  /// Marks on the middle component between the two fat vertices.
  MarkSet middle;
  Vertex v1;
  Vertex v2;
  /// Flag at v1 (resp. v2) on the path to the other fat vertex: marks behind it.
  MarkSet e1;
  MarkSet e2;
};

/// Cuts the two edges leaving the fat vertices toward each other. The result is
/// normalized so that min(P1) < min(P2). Throws DomainError unless filtration_level == 2.
TwoVertexDecomposition decompose_two_vertex(const MarkedTree& t);

struct ForgetResult {
  MarkedTree tree;
  /// True when the stratum is contracted (image has dimension k - 1).
  bool dimension_dropped = false;
};

/// Removes the last mark and stabilizes. Throws DomainError if n == 3 or mark != n.
ForgetResult forget_mark(const MarkedTree& t, int mark);

/// Maps trees of one enumeration to their positions.
class StrataIndex {
 public:
  StrataIndex() = default;
  explicit StrataIndex(std::vector<MarkedTree> trees);

  std::size_t size() const { return trees_.size(); }
  const MarkedTree& operator[](std::size_t id) const { return trees_[id]; }
  const std::vector<MarkedTree>& trees() const { return trees_; }
  /// Position of t; throws DomainError if t is not in the enumeration.
  std::size_t id(const MarkedTree& t) const;
  bool contains(const MarkedTree& t) const { return ids_.count(t) != 0; }

 private:
  std::vector<MarkedTree> trees_;
  std::unordered_map<MarkedTree, std::size_t, MarkedTreeHash> ids_;
};

}  // namespace strata
