#pragma once

#include <utility>
#include <vector>

#include "strata/exact_linalg.hpp"
#include "strata/trees.hpp"

namespace strata {

/// Which flag is paired with A in the subtracted sum of a Kontsevich–Manin relation:
/// (AB|CD) - (AC|BD) or (AB|CD) - (AD|BC).
enum class Pairing { kAC, kAD };

/// One Kontsevich–Manin relation in Q S_{k,n}, with the data that produced it.
struct KMRelation {
  MarkedTree sigma;  // in S_{k+1,n}
  Vertex vertex;
  MarkSet a, b, c, d;
  Pairing pairing = Pairing::kAC;
  /// Merged terms, sorted by tree; coefficients are +1 on the (AB U1|CD U2) sum, -1 on the other.
  std::vector<std::pair<MarkedTree, int>> terms;
};

/// Expands R(sigma, v, A, B, C, D) over all U1 ⊔ U2 = T, where T is the set of remaining
/// flags at v. Throws DomainError on repeated flags, flags not at v, or val(v) < 4.
KMRelation expand_relation(const MarkedTree& sigma, const Vertex& v, MarkSet a, MarkSet b, MarkSet c, MarkSet d,
                           Pairing pairing);

/// Two relations (both pairings) for every sigma in S_{k+1,n}, every vertex of valence >= 4,
/// every 4-subset of its flags. Deterministic order. Requires 0 <= k <= n - 4.
std::vector<KMRelation> generate_relations(int n, int k);

/// Rows of the relation matrix, columns indexed by `index` (an enumeration of S_{k,n}).
SparseIntMatrix relation_matrix(const std::vector<KMRelation>& relations, const StrataIndex& index);

}  // namespace strata
