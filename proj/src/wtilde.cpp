#include "strata/wtilde.hpp"

#include <algorithm>
#include <cstdlib>

#include "strata/errors.hpp"

namespace strata {

void PVector::add(const PairLabel& p, std::int64_t halves) {
  if (halves == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, halves);
  if (!inserted && (it->second += halves) == 0) terms_.erase(it);
}

PVector& PVector::operator+=(const PVector& o) {
  for (const auto& [p, h] : o.terms_) add(p, h);
  return *this;
}

PVector PVector::scaled(std::int64_t factor) const {
  PVector out;
  for (const auto& [p, h] : terms_) out.add(p, h * factor);
  return out;
}

std::int64_t PVector::halves(const PairLabel& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? 0 : it->second;
}

PVector PVector::restricted_to_inner_level(int n, int b) const {
  PVector out;
  for (const auto& [p, h] : terms_)
    if (inner_level(p, n) == b) out.terms_.emplace(p, h);
  return out;
}

std::int64_t PVector::max_abs_halves() const {
  std::int64_t best = 0;
  for (const auto& [p, h] : terms_) best = std::max(best, std::abs(h));
  return best;
}

std::string format_halves(std::int64_t halves) {
  if (halves % 2 == 0) return std::to_string(halves / 2);
  return std::to_string(halves) + "/2";
}

PairLabel w_map(const MarkedTree& t) {
  const TwoVertexDecomposition d = decompose_two_vertex(t);
  return {d.p1, d.alpha1, d.p2, d.alpha2};
}

int e_pi(std::span<const MarkSet> parts, const PairLabel& gamma) {
  int s1 = 0, s2 = 0;
  MarkSet covered;
  for (MarkSet part : parts) {
    if (part.subset_of(gamma.p1))
      ++s1;
    else if (part.subset_of(gamma.p2))
      ++s2;
    else
      throw DomainError("e_pi: part " + part.str() + " straddles P1 and P2");
    covered |= part;
  }
  if (covered != (gamma.p1 | gamma.p2)) throw DomainError("e_pi: the parts do not cover P1 ∪ P2");
  return std::min(s1 - gamma.a1, s2 - gamma.a2);
}

PVector wtilde(const MarkedTree& t) {
  PVector out;
  const int level = filtration_level(t);
  if (level == 2) {
    out.add(w_map(t), 2);
    return out;
  }
  if (level != 1) return out;

  const int n = t.n(), k = t.dimension();
  Vertex fat;
  for (Vertex& v : t.vertices())
    if (v.valence() > 3) fat = std::move(v);
  const std::vector<MarkSet>& parts = fat.flags;
  const int m = fat.valence();
  const auto with_one = static_cast<int>(
      std::find_if(parts.begin(), parts.end(), [](MarkSet f) { return f.contains(1); }) - parts.begin());
  const MarkSet all = MarkSet::full(n);

  // Γ runs over unordered level-0 pairs; the part holding mark 1 pins down P1.
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (!(mask & (1u << with_one)) || mask == (1u << m) - 1) continue;
    MarkSet p1;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) p1 |= parts[i];
    for (int a1 = 1; a1 < k; ++a1) {
      const PairLabel gamma{p1, a1, all - p1, k - a1};
      if (!gamma.valid(n, k)) continue;
      const int e = e_pi(parts, gamma);
      out.add(gamma, (e % 2 == 0) ? 1 : -1);
    }
  }
  return out;
}

PVector wtilde(const KMRelation& rel) {
  PVector out;
  for (const auto& [tree, coeff] : rel.terms) out += wtilde(tree).scaled(coeff);
  return out;
}

KillReport verify_relations_killed(int n, int k) {
  if (k < 2 || k > n - 4) throw DomainError("verify_relations_killed: need 2 <= k <= n-4");
  KillReport report{n, k, 0, 0, {}};
  for (KMRelation& rel : generate_relations(n, k)) {
    ++report.relations_checked;
    PVector residual = wtilde(rel).restricted_to_inner_level(n, 0);
    if (residual.empty()) continue;
    report.max_residual_halves = std::max(report.max_residual_halves, residual.max_abs_halves());
    report.failures.push_back({std::move(rel), std::move(residual)});
  }
  return report;
}

ForgetfulReport verify_forgetful_square(int n, int k, int b) {
  const int big = n + 1;
  if (k < 2 || b < 0 || big > kMaxMarks || k > big - 3)
    throw DomainError("verify_forgetful_square: need k >= 2, b >= 0, k <= n-2");
  ForgetfulReport report{n, k, b, 0, 0, {}};
  const MarkSet last = MarkSet::single(big);
  for (const MarkedTree& sigma : enumerate_strata(big, k)) {
    if (filtration_level(sigma) != 2) continue;
    const TwoVertexDecomposition d = decompose_two_vertex(sigma);
    if (d.middle.size() != b + 1) continue;
    ++report.trees_checked;

    std::optional<PairLabel> via_pairs;
    const PairLabel upstairs = w_map(sigma);
    if (!last.subset_of(upstairs.p1 | upstairs.p2)) via_pairs = upstairs;

    std::optional<PairLabel> via_trees;
    const ForgetResult pushed = forget_mark(sigma, big);
    if (last.subset_of(d.middle)) {
      if (pushed.dimension_dropped) {
        report.mismatches.push_back({sigma, std::nullopt, via_pairs, "middle mark forgotten but stratum contracted"});
        continue;
      }
      if (block_of(pushed.tree) != BlockKey{2, b}) {
        report.mismatches.push_back({sigma, std::nullopt, via_pairs, "forgotten tree left (S2)^b"});
        continue;
      }
      via_trees = w_map(pushed.tree);
    } else if (!pushed.dimension_dropped && block_of(pushed.tree) < BlockKey{2, b + 1}) {
      report.mismatches.push_back({sigma, std::nullopt, via_pairs, "pushforward escapes (S2)^{>=b+1}"});
      continue;
    }
    if (via_trees || via_pairs) ++report.nonzero_paths;
    if (via_trees != via_pairs) report.mismatches.push_back({sigma, via_trees, via_pairs, "square does not commute"});
  }
  return report;
}

MarkedTree apply_move(const MarkedTree& t, const RewriteMove& move) {
  std::vector<MarkSet> splits = t.splits();
  for (Split s : move.removed) {
    auto it = std::find(splits.begin(), splits.end(), normalize_split(s, t.n()));
    if (it == splits.end()) throw DomainError("apply_move: edge " + s.str() + " is not in " + t.canonical_form());
    splits.erase(it);
  }
  splits.insert(splits.end(), move.added.begin(), move.added.end());
  return MarkedTree(t.n(), std::move(splits));
}

namespace {

// Internal edges of a left-combed caterpillar hanging by one edge with leaves in `seq` order:
// the prefixes of length 2 .. |seq| - 1.
std::vector<MarkSet> caterpillar_edges(const std::vector<int>& seq) {
  std::vector<MarkSet> out;
  MarkSet acc;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    acc |= MarkSet::single(seq[i]);
    if (i >= 1) out.push_back(acc);
  }
  return out;
}

// Edges with a side of at least two marks strictly inside `region`.
std::vector<Split> edges_inside(const MarkedTree& t, MarkSet region) {
  std::vector<Split> out;
  for (Split s : t.splits()) {
    const MarkSet other = s.complement(t.n());
    if ((s.subset_of(region) && s != region) || (other.subset_of(region) && other != region)) out.push_back(s);
  }
  return out;
}

std::vector<Split> normalized_sorted(std::vector<MarkSet> v, int n) {
  for (MarkSet& s : v) s = normalize_split(s, n);
  std::sort(v.begin(), v.end(), LexLess{});
  return v;
}

// A rearrangement replacing `current` edges by `target` edges; nullopt if nothing changes.
std::optional<RewriteMove> rearrangement(MarkSet region, std::vector<Split> current, std::vector<Split> target, int n) {
  current = normalized_sorted(std::move(current), n);
  target = normalized_sorted(std::move(target), n);
  RewriteMove move;
  move.kind = RewriteMove::Kind::kTrivalentRearrange;
  move.region = region;
  std::set_difference(current.begin(), current.end(), target.begin(), target.end(), std::back_inserter(move.removed),
                      LexLess{});
  std::set_difference(target.begin(), target.end(), current.begin(), current.end(), std::back_inserter(move.added),
                      LexLess{});
  if (move.removed.empty() && move.added.empty()) return std::nullopt;
  return move;
}

std::vector<int> first_marks(MarkSet s, int count) {
  std::vector<int> m = s.members();
  m.resize(std::min<std::size_t>(m.size(), static_cast<std::size_t>(count)));
  return m;
}

struct FatSide {
  MarkSet p;
  int alpha;
  Vertex v;
  MarkSet toward;
};

FatSide side_of(const TwoVertexDecomposition& d, int side) {
  return side == 0 ? FatSide{d.p1, d.alpha1, d.v1, d.e1} : FatSide{d.p2, d.alpha2, d.v2, d.e2};
}

// Edges of the middle component, including the two edges cut off by the fat vertices.
std::vector<Split> middle_edges(const MarkedTree& t, MarkSet p1, MarkSet p2) {
  std::vector<Split> out;
  for (Split s : t.splits()) {
    const MarkSet other = s.complement(t.n());
    const auto strictly_in = [&](MarkSet region) {
      return (s.subset_of(region) && s != region) || (other.subset_of(region) && other != region);
    };
    if (!strictly_in(p1) && !strictly_in(p2)) out.push_back(s);
  }
  return out;
}

std::vector<Split> middle_path(MarkSet p1, MarkSet middle) {
  std::vector<Split> out{p1};
  MarkSet acc = p1;
  middle.for_each([&](int m) {
    acc |= MarkSet::single(m);
    out.push_back(acc);
  });
  return out;
}

}  // namespace

MarkedTree standard_form(const PairLabel& p, int n) {
  if (!p.valid(n, p.a1 + p.a2)) throw DomainError("standard_form: invalid pair label");
  std::vector<MarkSet> splits;
  for (auto [part, alpha] : {std::pair{p.p1, p.a1}, std::pair{p.p2, p.a2}}) {
    std::vector<int> members = part.members();
    const std::vector<int> rest(members.begin() + alpha + 1, members.end());
    if (rest.size() >= 2) {
      splits.push_back(MarkSet::of(rest));
      for (MarkSet e : caterpillar_edges(rest)) splits.push_back(e);
    }
  }
  const MarkSet middle = MarkSet::full(n) - p.p1 - p.p2;
  for (MarkSet e : middle_path(p.p1, middle)) splits.push_back(e);
  return MarkedTree(n, std::move(splits));
}

RewriteResult rewrite_to_standard(const MarkedTree& t) {
  const int n = t.n();
  RewriteResult result{t, {}};
  MarkedTree& cur = result.sigma0;
  auto apply = [&](RewriteMove move) {
    cur = apply_move(cur, move);
    result.moves.push_back(std::move(move));
  };

  for (int side = 0; side < 2; ++side) {
    for (;;) {
      const FatSide fs = side_of(decompose_two_vertex(cur), side);
      const MarkSet required = MarkSet::of(first_marks(fs.p, fs.alpha + 1));
      if (required.subset_of(fs.v.half_edges())) break;

      MarkSet e;
      for (MarkSet f : fs.v.flags)
        if (f != fs.toward && f.size() >= 2 && !(f & required).empty()) {
          e = f;
          break;
        }
      const int x = (e & required).min();
      const MarkSet rest = e - MarkSet::single(x);

      // Bring x next to the fat vertex by combing the subtree behind e with x on top.
      const Vertex* far_end = nullptr;
      const auto verts = cur.vertices();
      for (const Vertex& v : verts)
        if (v.has_flag(e.complement(n))) far_end = &v;
      if (!far_end->has_flag(MarkSet::single(x))) {
        std::vector<int> seq = rest.members();
        seq.push_back(x);
        std::vector<MarkSet> target = caterpillar_edges(seq);
        if (auto move = rearrangement(e, edges_inside(cur, e), std::move(target), n)) apply(std::move(*move));
      }

      // C: the lex-largest flag at the fat vertex other than e, the flag toward the other
      // fat vertex, and required half-edges.
      MarkSet c;
      for (MarkSet f : fs.v.flags) {
        if (f == e || f == fs.toward || (f.size() == 1 && f.subset_of(required))) continue;
        if (c.empty() || lex_less(c, f)) c = f;
      }
      RewriteMove swap;
      swap.kind = RewriteMove::Kind::kKMSwap;
      swap.a = rest;
      swap.b = MarkSet::single(x);
      swap.c = c;
      swap.e = fs.toward;
      swap.removed = {normalize_split(e, n)};
      swap.added = {normalize_split(rest | c, n)};
      apply(std::move(swap));
    }

    // Comb the one remaining subtree at the fat vertex.
    const FatSide fs = side_of(decompose_two_vertex(cur), side);
    const MarkSet required = MarkSet::of(first_marks(fs.p, fs.alpha + 1));
    for (MarkSet f : fs.v.flags) {
      if (f == fs.toward || (f.size() == 1 && f.subset_of(required))) continue;
      if (auto move = rearrangement(f, edges_inside(cur, f), caterpillar_edges(f.members()), n)) apply(std::move(*move));
    }
  }

  const TwoVertexDecomposition d = decompose_two_vertex(cur);
  if (auto move = rearrangement(d.middle, middle_edges(cur, d.p1, d.p2), middle_path(d.p1, d.middle), n))
    apply(std::move(*move));
  return result;
}

RewriteReport verify_rewrite(Workbench& wb, int n, int k, std::optional<std::size_t> sample, std::uint64_t seed) {
  if (k < 2 || k > n - 4) throw DomainError("verify_rewrite: need 2 <= k <= n-4");
  RewriteReport report{n, k, 0, 0, {}};
  std::vector<MarkedTree> trees;
  for (MarkedTree& t : enumerate_strata(n, k))
    if (filtration_level(t) == 2) trees.push_back(std::move(t));
  if (sample && *sample < trees.size()) {
    std::vector<MarkedTree> picked;
    std::mt19937_64 rng(seed);
    std::sample(trees.begin(), trees.end(), std::back_inserter(picked), *sample, rng);
    trees = std::move(picked);
  }

  for (const MarkedTree& t : trees) {
    ++report.trees_checked;
    const PairLabel label = w_map(t);
    const BlockKey block = block_of(t);
    const auto fail = [&](const std::string& why) { report.failures.push_back(t.canonical_form() + ": " + why); };

    const RewriteResult res = rewrite_to_standard(t);
    if (res.sigma0 != standard_form(label, n)) {
      fail("rewrite ended at " + res.sigma0.canonical_form() + ", not the standard form");
      continue;
    }
    if (!rewrite_to_standard(res.sigma0).moves.empty()) fail("standard form is not a fixed point");

    MarkedTree before = t;
    for (const RewriteMove& move : res.moves) {
      ++report.moves_checked;
      const MarkedTree after = apply_move(before, move);
      if (filtration_level(after) != 2 || w_map(after) != label || block_of(after) != block) {
        fail("move changed the W-image or inner level");
        break;
      }
      if (move.kind == RewriteMove::Kind::kTrivalentRearrange) {
        if (!class_equal(wb, before, after)) fail("rearrangement changed the homology class");
      } else {
        // The flag toward the other fat vertex contains P2 exactly when the swap happens at v1.
        const int side = label.p2.subset_of(move.e) ? 0 : 1;
        const FatSide sb = side_of(decompose_two_vertex(before), side);
        const FatSide sa = side_of(decompose_two_vertex(after), side);
        const MarkSet required = MarkSet::of(first_marks(sb.p, sb.alpha + 1));
        if ((sa.v.half_edges() & required).size() != (sb.v.half_edges() & required).size() + 1)
          fail("KM swap did not gather a required mark");
        if (!class_equal_modulo(wb, before, after, BlockKey{2, block.inner + 1}))
          fail("KM swap changed the class in (Q2)^b");
      }
      before = after;
    }
    if (before != res.sigma0) fail("replaying the moves does not reproduce sigma0");
  }
  return report;
}

}  // namespace strata
