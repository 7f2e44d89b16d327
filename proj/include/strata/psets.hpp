#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "strata/character.hpp"
#include "strata/mark_set.hpp"
#include "strata/permutation.hpp"

namespace strata {

/// An element of P¹_{k,n}: a subset A with k+3 <= |A| <= n and |A| ≡ k+3 (mod 2).
struct SubsetLabel {
  MarkSet a;
  bool operator==(const SubsetLabel&) const = default;
};

/// An element {(P1, a1), (P2, a2)} of P²_{k,n}, stored with min(P1) < min(P2).
struct PairLabel {
  MarkSet p1;
  int a1 = 0;
  MarkSet p2;
  int a2 = 0;

  /// Orders the two labeled parts so that the part holding the smaller mark comes first.
  static PairLabel normalized(MarkSet p1, int a1, MarkSet p2, int a2);

  /// True if this is a valid member of P²_{k,n}.
  bool valid(int n, int k) const;

  bool operator==(const PairLabel&) const = default;
  std::strong_ordering operator<=>(const PairLabel& o) const;
};

std::vector<SubsetLabel> enumerate_p1(int n, int k);
/// Closed form: sum of C(n, j) over k+3 <= j <= n with j ≡ k+3 (mod 2).
std::uint64_t cardinality_p1(int n, int k);

/// Requires k >= 2 (empty otherwise); ordered by PairLabel.
std::vector<PairLabel> enumerate_p2(int n, int k);
/// Counts unordered pairs by part sizes: (1/2) sum C(n, s1) C(n - s1, s2) over admissible
/// sizes and weights.
std::uint64_t cardinality_p2(int n, int k);

/// Number of marks outside P1 ∪ P2.
int inner_level(const PairLabel& p, int n);

PairLabel apply_permutation(const PairLabel& p, const Permutation& g);

enum class PSet { kP1, kP2 };

/// Permutation character: number of elements fixed by a representative of each cycle type.
Character character_pset(int n, int k, PSet which);

}  // namespace strata
