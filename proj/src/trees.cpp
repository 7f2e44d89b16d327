#include "strata/trees.hpp"

#include <algorithm>
#include <unordered_set>

#include "strata/errors.hpp"

namespace strata {

namespace {

bool family_less(const std::vector<Split>& a, const std::vector<Split>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), lex_less);
}

void sort_family(std::vector<Split>& splits) { std::sort(splits.begin(), splits.end(), LexLess{}); }

bool compatible(Split a, Split b) { return a.subset_of(b) || b.subset_of(a) || a.disjoint(b); }

}  // namespace

MarkedTree tree_from_canonical_splits(int n, std::vector<Split> splits) {
  MarkedTree t;
  t.n_ = n;
  t.splits_ = std::move(splits);
  return t;
}

MarkSet Vertex::half_edges() const {
  MarkSet out;
  for (MarkSet f : flags)
    if (f.size() == 1) out |= f;
  return out;
}

bool Vertex::has_flag(MarkSet f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

MarkedTree::MarkedTree(int n, std::vector<MarkSet> splits) : n_(n) {
  if (n < 3 || n > kMaxMarks) throw DomainError("mark count must lie in [3, " + std::to_string(kMaxMarks) + "]");
  const MarkSet all = MarkSet::full(n);
  for (MarkSet& s : splits) {
    if (!s.subset_of(all)) throw DomainError("split " + s.str() + " uses marks outside {1.." + std::to_string(n) + "}");
    s = normalize_split(s, n);
    if (s.size() < 2 || s.size() > n - 2) throw DomainError("split " + s.str() + " is not a stable internal edge");
  }
  sort_family(splits);
  for (std::size_t i = 0; i < splits.size(); ++i) {
    if (i + 1 < splits.size() && splits[i] == splits[i + 1]) throw DomainError("duplicate split " + splits[i].str());
    for (std::size_t j = i + 1; j < splits.size(); ++j)
      if (!compatible(splits[i], splits[j]))
        throw DomainError("incompatible splits " + splits[i].str() + " and " + splits[j].str());
  }
  splits_ = std::move(splits);
}

MarkedTree MarkedTree::star(int n) { return MarkedTree(n, {}); }

bool MarkedTree::has_split(MarkSet side) const {
  const Split s = normalize_split(side, n_);
  return std::binary_search(splits_.begin(), splits_.end(), s, LexLess{});
}

std::vector<Vertex> MarkedTree::vertices() const {
  const std::size_t e = splits_.size();
  // parent[i]: index of the smallest split strictly containing split i, or e for the root.
  std::vector<std::size_t> parent(e, e);
  for (std::size_t i = 0; i < e; ++i) {
    for (std::size_t j = 0; j < e; ++j) {
      if (i == j || !splits_[i].subset_of(splits_[j])) continue;
      if (parent[i] == e || splits_[j].size() < splits_[parent[i]].size()) parent[i] = j;
    }
  }
  std::vector<Vertex> out(e + 1);
  std::vector<MarkSet> covered(e + 1);
  for (std::size_t i = 0; i < e; ++i) {
    out[parent[i]].flags.push_back(splits_[i]);
    covered[parent[i]] |= splits_[i];
  }
  for (std::size_t v = 0; v <= e; ++v) {
    const MarkSet region = v == e ? MarkSet::full(n_) : splits_[v];
    (region - covered[v]).for_each([&](int m) { out[v].flags.push_back(MarkSet::single(m)); });
    if (v < e) out[v].flags.push_back(splits_[v].complement(n_));
    std::sort(out[v].flags.begin(), out[v].flags.end(), LexLess{});
  }
  std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(e), out.end());
  return out;
}

std::string MarkedTree::canonical_form() const {
  std::string s = "[";
  for (std::size_t i = 0; i < splits_.size(); ++i) {
    if (i) s += ',';
    s += splits_[i].str();
  }
  return s + "]";
}

std::strong_ordering MarkedTree::operator<=>(const MarkedTree& o) const {
  if (n_ != o.n_) return n_ <=> o.n_;
  if (splits_.size() != o.splits_.size()) return splits_.size() <=> o.splits_.size();
  if (family_less(splits_, o.splits_)) return std::strong_ordering::less;
  if (family_less(o.splits_, splits_)) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t MarkedTreeHash::operator()(const MarkedTree& t) const noexcept {
  std::size_t h = static_cast<std::size_t>(t.n()) * 0x9e3779b97f4a7c15ULL;
  for (Split s : t.splits()) h = (h ^ s.bits()) * 0x100000001b3ULL;
  return h;
}

int ValencePartition::total() const {
  int sum = 0;
  for (int p : parts) sum += p;
  return sum;
}

namespace {

// Every tree obtained from t by splitting one vertex into two stable halves.
void for_each_refinement(const MarkedTree& t, auto&& emit) {
  const int n = t.n();
  for (const Vertex& v : t.vertices()) {
    const int m = v.valence();
    if (m < 4) continue;
    // Subsets containing flag 0 enumerate each unordered bipartition once.
    for (std::uint32_t mask = 1; mask < (1u << m); mask += 2) {
      const int sz = std::popcount(mask);
      if (sz < 2 || m - sz < 2) continue;
      MarkSet side;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) side |= v.flags[i];
      std::vector<Split> splits = t.splits();
      splits.push_back(normalize_split(side, n));
      sort_family(splits);
      emit(tree_from_canonical_splits(n, std::move(splits)));
    }
  }
}

}  // namespace

std::vector<MarkedTree> enumerate_strata(int n, int k) {
  if (n < 3 || n > kMaxMarks) throw DomainError("enumerate_strata: n must lie in [3, " + std::to_string(kMaxMarks) + "]");
  if (k < 0 || k > n - 3)
    throw DomainError("enumerate_strata: k=" + std::to_string(k) + " outside [0, n-3] for n=" + std::to_string(n));
  std::vector<MarkedTree> level{MarkedTree::star(n)};
  for (int edges = 1; edges <= n - 3 - k; ++edges) {
    std::unordered_set<MarkedTree, MarkedTreeHash> next;
    for (const MarkedTree& t : level) for_each_refinement(t, [&](MarkedTree&& r) { next.insert(std::move(r)); });
    level.assign(next.begin(), next.end());
  }
  std::sort(level.begin(), level.end());
  return level;
}

ValencePartition valence_partition(const MarkedTree& t) {
  ValencePartition lambda;
  for (const Vertex& v : t.vertices())
    if (v.valence() > 3) lambda.parts.push_back(v.valence() - 3);
  std::sort(lambda.parts.begin(), lambda.parts.end(), std::greater<>());
  return lambda;
}

int filtration_level(const MarkedTree& t) { return static_cast<int>(valence_partition(t).parts.size()); }

MarkedTree apply_permutation(const MarkedTree& t, const Permutation& g) {
  if (g.n() != t.n()) throw DomainError("permutation degree does not match the tree");
  std::vector<Split> splits;
  splits.reserve(t.splits().size());
  for (Split s : t.splits()) splits.push_back(normalize_split(g(s), t.n()));
  sort_family(splits);
  return tree_from_canonical_splits(t.n(), std::move(splits));
}

MarkedTree split_vertex(const MarkedTree& t, const Vertex& v, std::span<const MarkSet> flags_a,
                        std::span<const MarkSet> flags_b) {
  if (flags_a.size() < 2 || flags_b.size() < 2)
    throw DomainError("split_vertex: each side needs at least two flags");
  std::vector<MarkSet> all(flags_a.begin(), flags_a.end());
  all.insert(all.end(), flags_b.begin(), flags_b.end());
  std::sort(all.begin(), all.end(), LexLess{});
  if (all != v.flags) throw DomainError("split_vertex: flag sets do not partition the flags at the vertex");
  MarkSet side;
  for (MarkSet f : flags_a) side |= f;
  std::vector<Split> splits = t.splits();
  splits.push_back(normalize_split(side, t.n()));
  sort_family(splits);
  return tree_from_canonical_splits(t.n(), std::move(splits));
}

MarkedTree contract_edge(const MarkedTree& t, Split edge) {
  const Split s = normalize_split(edge, t.n());
  std::vector<Split> splits = t.splits();
  auto it = std::find(splits.begin(), splits.end(), s);
  if (it == splits.end()) throw DomainError("contract_edge: " + s.str() + " is not an edge of the tree");
  splits.erase(it);
  return tree_from_canonical_splits(t.n(), std::move(splits));
}

TwoVertexDecomposition decompose_two_vertex(const MarkedTree& t) {
  std::vector<Vertex> fat;
  for (Vertex& v : t.vertices())
    if (v.valence() > 3) fat.push_back(std::move(v));
  if (fat.size() != 2)
    throw DomainError("decompose_two_vertex: tree " + t.canonical_form() + " has filtration level " +
                      std::to_string(fat.size()) + ", expected 2");
  const MarkSet all = MarkSet::full(t.n());
  // The flags pointing at each other are the unique pair covering every mark.
  for (MarkSet f : fat[0].flags) {
    for (MarkSet g : fat[1].flags) {
      if ((f | g) != all) continue;
      TwoVertexDecomposition d{all - f, fat[0].valence() - 3, all - g, fat[1].valence() - 3, f & g,
                               fat[0],   fat[1],               f,       g};
      if (d.p2.min() < d.p1.min()) {
        std::swap(d.p1, d.p2);
        std::swap(d.alpha1, d.alpha2);
        std::swap(d.v1, d.v2);
        std::swap(d.e1, d.e2);
      }
      return d;
    }
  }
  throw DomainError("decompose_two_vertex: no connecting path found");  // unreachable for valid trees
}

ForgetResult forget_mark(const MarkedTree& t, int mark) {
  const int n = t.n();
  if (n <= 3) throw DomainError("forget_mark: cannot forget a mark when n = 3");
  if (mark != n) throw DomainError("forget_mark: only the last mark can be forgotten");
  const MarkSet gone = MarkSet::single(n);
  std::vector<Split> splits;
  for (Split s : t.splits()) {
    const Split r = s - gone;
    if (r.size() >= 2 && r.size() <= n - 3) splits.push_back(r);
  }
  sort_family(splits);
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  const bool dropped = splits.size() == t.splits().size();
  return {tree_from_canonical_splits(n - 1, std::move(splits)), dropped};
}

StrataIndex::StrataIndex(std::vector<MarkedTree> trees) : trees_(std::move(trees)) {
  ids_.reserve(trees_.size());
  for (std::size_t i = 0; i < trees_.size(); ++i) ids_.emplace(trees_[i], i);
}

std::size_t StrataIndex::id(const MarkedTree& t) const {
  auto it = ids_.find(t);
  if (it == ids_.end()) throw DomainError("tree " + t.canonical_form() + " is not in this enumeration");
  return it->second;
}

}  // namespace strata
