#include "strata/psets.hpp"

#include <algorithm>

#include "strata/errors.hpp"

namespace strata {

namespace {

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t c = 1;
  for (int i = 1; i <= r; ++i) c = c * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return c;
}

void check_n(int n) {
  if (n < 1 || n > kMaxMarks) throw DomainError("mark count out of range");
}

}  // namespace

PairLabel PairLabel::normalized(MarkSet p1, int a1, MarkSet p2, int a2) {
  if (p1.empty() || p2.empty()) throw DomainError("pair label parts must be nonempty");
  if (p2.min() < p1.min()) return {p2, a2, p1, a1};
  return {p1, a1, p2, a2};
}

bool PairLabel::valid(int n, int k) const {
  const MarkSet all = MarkSet::full(n);
  return p1.subset_of(all) && p2.subset_of(all) && p1.disjoint(p2) && a1 >= 1 && a2 >= 1 && a1 + a2 == k &&
         p1.size() >= a1 + 2 && p2.size() >= a2 + 2 && p1.min() < p2.min();
}

std::strong_ordering PairLabel::operator<=>(const PairLabel& o) const {
  if (p1 != o.p1) return lex_less(p1, o.p1) ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a1 != o.a1) return a1 <=> o.a1;
  if (p2 != o.p2) return lex_less(p2, o.p2) ? std::strong_ordering::less : std::strong_ordering::greater;
  return a2 <=> o.a2;
}

std::vector<SubsetLabel> enumerate_p1(int n, int k) {
  check_n(n);
  std::vector<SubsetLabel> out;
  if (k < 0) return out;
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    const MarkSet a(bits << 1);
    if (a.size() >= k + 3 && (a.size() - (k + 3)) % 2 == 0) out.push_back({a});
  }
  std::sort(out.begin(), out.end(), [](const SubsetLabel& x, const SubsetLabel& y) { return lex_less(x.a, y.a); });
  return out;
}

std::uint64_t cardinality_p1(int n, int k) {
  std::uint64_t total = 0;
  for (int j = k + 3; j <= n; j += 2) total += binomial(n, j);
  return total;
}

std::vector<PairLabel> enumerate_p2(int n, int k) {
  check_n(n);
  std::vector<PairLabel> out;
  if (k < 2) return out;
  const std::uint32_t all = MarkSet::full(n).bits();
  for (std::uint32_t b1 = all;; b1 = (b1 - 1) & all) {
    const MarkSet p1(b1);
    if (!p1.empty()) {
      // P2 ranges over subsets of the complement whose minimum exceeds min(P1).
      const std::uint32_t rest = all & ~b1 & ~((std::uint32_t{2} << p1.min()) - 1);
      for (std::uint32_t b2 = rest;; b2 = (b2 - 1) & rest) {
        const MarkSet p2(b2);
        if (!p2.empty()) {
          for (int a1 = 1; a1 < k; ++a1) {
            const PairLabel pl{p1, a1, p2, k - a1};
            if (pl.valid(n, k)) out.push_back(pl);
          }
        }
        if (b2 == 0) break;
      }
    }
    if (b1 == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t cardinality_p2(int n, int k) {
  if (k < 2) return 0;
  std::uint64_t ordered = 0;
  for (int s1 = 0; s1 <= n; ++s1)
    for (int s2 = 0; s1 + s2 <= n; ++s2)
      for (int a1 = 1; a1 < k; ++a1)
        if (s1 >= a1 + 2 && s2 >= k - a1 + 2) ordered += binomial(n, s1) * binomial(n - s1, s2);
  return ordered / 2;
}

int inner_level(const PairLabel& p, int n) { return n - p.p1.size() - p.p2.size(); }

PairLabel apply_permutation(const PairLabel& p, const Permutation& g) {
  return PairLabel::normalized(g(p.p1), p.a1, g(p.p2), p.a2);
}

Character character_pset(int n, int k, PSet which) {
  if (which == PSet::kP1) {
    const auto elements = enumerate_p1(n, k);
    return character_from(n, [&](const Permutation& g) {
      return static_cast<std::int64_t>(
          std::count_if(elements.begin(), elements.end(), [&](const SubsetLabel& s) { return g(s.a) == s.a; }));
    });
  }
  const auto elements = enumerate_p2(n, k);
  return character_from(n, [&](const Permutation& g) {
    return static_cast<std::int64_t>(
        std::count_if(elements.begin(), elements.end(), [&](const PairLabel& p) { return apply_permutation(p, g) == p; }));
  });
}

}  // namespace strata
