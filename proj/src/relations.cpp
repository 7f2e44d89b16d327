#include "strata/relations.hpp"

#include <algorithm>
#include <map>

#include "strata/errors.hpp"

namespace strata {

KMRelation expand_relation(const MarkedTree& sigma, const Vertex& v, MarkSet a, MarkSet b, MarkSet c, MarkSet d,
                           Pairing pairing) {
  if (v.valence() < 4) throw DomainError("expand_relation: vertex has valence < 4");
  const MarkSet chosen[] = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    if (!v.has_flag(chosen[i])) throw DomainError("expand_relation: " + chosen[i].str() + " is not a flag at v");
    for (int j = i + 1; j < 4; ++j)
      if (chosen[i] == chosen[j]) throw DomainError("expand_relation: repeated flag " + chosen[i].str());
  }
  std::vector<MarkSet> rest;
  for (MarkSet f : v.flags)
    if (f != a && f != b && f != c && f != d) rest.push_back(f);

  const MarkSet partner = pairing == Pairing::kAC ? c : d;
  const MarkSet other = pairing == Pairing::kAC ? d : c;

  std::map<MarkedTree, int> acc;
  const std::size_t t = rest.size();
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    std::vector<MarkSet> left_pos{a, b}, right_pos{c, d};
    std::vector<MarkSet> left_neg{a, partner}, right_neg{b, other};
    for (std::size_t i = 0; i < t; ++i) {
      const bool in_u1 = (mask >> i) & 1u;
      (in_u1 ? left_pos : right_pos).push_back(rest[i]);
      (in_u1 ? left_neg : right_neg).push_back(rest[i]);
    }
    acc[split_vertex(sigma, v, left_pos, right_pos)] += 1;
    acc[split_vertex(sigma, v, left_neg, right_neg)] -= 1;
  }

  KMRelation rel{sigma, v, a, b, c, d, pairing, {}};
  for (auto& [tree, coeff] : acc)
    if (coeff != 0) rel.terms.emplace_back(tree, coeff);
  return rel;
}

std::vector<KMRelation> generate_relations(int n, int k) {
  if (n < 4 || k < 0 || k > n - 4)
    throw DomainError("generate_relations: need 0 <= k <= n-4, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  std::vector<KMRelation> out;
  for (const MarkedTree& sigma : enumerate_strata(n, k + 1)) {
    for (const Vertex& v : sigma.vertices()) {
      const int m = v.valence();
      if (m < 4) continue;
      const auto& f = v.flags;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          for (int p = j + 1; p < m; ++p)
            for (int q = p + 1; q < m; ++q) {
              out.push_back(expand_relation(sigma, v, f[i], f[j], f[p], f[q], Pairing::kAC));
              out.push_back(expand_relation(sigma, v, f[i], f[j], f[p], f[q], Pairing::kAD));
            }
    }
  }
  return out;
}

SparseIntMatrix relation_matrix(const std::vector<KMRelation>& relations, const StrataIndex& index) {
  SparseIntMatrix m(index.size());
  for (const KMRelation& rel : relations) {
    SparseIntVector row;
    row.reserve(rel.terms.size());
    for (const auto& [tree, coeff] : rel.terms) row.emplace_back(static_cast<std::uint32_t>(index.id(tree)), coeff);
    m.add_row(std::move(row));
  }
  return m;
}

}  // namespace strata
