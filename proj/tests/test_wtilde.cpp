#include <doctest.h>

#include <map>

#include "strata/errors.hpp"
#include "strata/wtilde.hpp"

using namespace strata;

namespace {

MarkedTree tree(int n, std::vector<MarkSet> splits) { return MarkedTree(n, std::move(splits)); }

}  // namespace

TEST_SUITE("wtilde") {
  TEST_CASE("w_map") {
    CHECK(w_map(tree(6, {MarkSet{4, 5, 6}})) == PairLabel{MarkSet{1, 2, 3}, 1, MarkSet{4, 5, 6}, 1});
    CHECK(w_map(tree(7, {MarkSet{4, 5, 6}, MarkSet{4, 5, 6, 7}})) == PairLabel{MarkSet{1, 2, 3}, 1, MarkSet{4, 5, 6}, 1});
    CHECK(w_map(tree(7, {MarkSet{5, 6, 7}})) == PairLabel{MarkSet{1, 2, 3, 4}, 2, MarkSet{5, 6, 7}, 1});
    CHECK_THROWS_AS(w_map(MarkedTree::star(6)), DomainError);
  }

  TEST_CASE("e_pi") {
    const std::vector<MarkSet> parts{MarkSet{1}, MarkSet{2}, MarkSet{3}, MarkSet{4}, MarkSet{5, 6}};
    CHECK(e_pi(parts, PairLabel{MarkSet{1, 5, 6}, 1, MarkSet{2, 3, 4}, 1}) == 1);
    // A ∪ B as one part with s1 = 1 + a1 gives 1.
    const std::vector<MarkSet> merged{MarkSet{1, 2}, MarkSet{3}, MarkSet{4}, MarkSet{5}, MarkSet{6}};
    CHECK(e_pi(merged, PairLabel{MarkSet{1, 2, 3}, 1, MarkSet{4, 5, 6}, 1}) == 1);
    CHECK_THROWS_AS(e_pi(parts, PairLabel{MarkSet{1, 2, 5}, 1, MarkSet{3, 4, 6}, 1}), DomainError);
  }

  TEST_CASE("wtilde by filtration level") {
    for (const MarkedTree& t : enumerate_strata(6, 0)) CHECK(wtilde(t).empty());
    for (const MarkedTree& t : enumerate_strata(8, 3)) {
      const int r = filtration_level(t);
      const PVector w = wtilde(t);
      if (r >= 3) CHECK(w.empty());
      if (r == 2) {
        CHECK(w.size() == 1);
        CHECK(w.halves(w_map(t)) == 2);
      }
      if (r == 1) {
        CHECK_FALSE(w.empty());
        for (const auto& [p, h] : w.terms()) {
          CHECK(inner_level(p, 8) == 0);
          CHECK(p.valid(8, 3));
          CHECK((h == 1 || h == -1));
        }
      }
    }
  }

  TEST_CASE("wtilde on a 5-valent vertex with a cherry") {
    const MarkedTree t = tree(6, {MarkSet{5, 6}});
    REQUIRE(t.dimension() == 2);
    PVector expected;
    for (int x = 1; x <= 4; ++x)
      expected.add(PairLabel::normalized(MarkSet{x, 5, 6}, 1, MarkSet{1, 2, 3, 4} - MarkSet{x}, 1), -1);
    CHECK(wtilde(t) == expected);
    CHECK(wtilde(t).size() == 4);
    CHECK(format_halves(-1) == "-1/2");
    CHECK(format_halves(4) == "2");
  }

  TEST_CASE("W-tilde kills every relation on inner level 0") {
    for (auto [n, k] : {std::pair{6, 2}, {7, 2}, {7, 3}}) {
      const KillReport r = verify_relations_killed(n, k);
      CHECK(r.relations_checked == generate_relations(n, k).size());
      CHECK(r.max_residual_halves == 0);
      CHECK(r.passed());
    }
    CHECK_THROWS_AS(verify_relations_killed(7, 1), DomainError);
    CHECK_THROWS_AS(verify_relations_killed(7, 4), DomainError);
  }

  TEST_CASE("a damaged relation is not killed") {
    KMRelation r = generate_relations(6, 2).front();
    PVector before = wtilde(r).restricted_to_inner_level(6, 0);
    REQUIRE(before.empty());
    bool found = false;
    for (std::size_t i = 0; i < r.terms.size() && !found; ++i) {
      KMRelation damaged = r;
      damaged.terms.erase(damaged.terms.begin() + static_cast<std::ptrdiff_t>(i));
      found = !wtilde(damaged).restricted_to_inner_level(6, 0).empty();
    }
    CHECK(found);
  }

  TEST_CASE("forgetful square") {
    for (int n = 3; n <= 6; ++n)
      for (int k = 2; k <= n - 2; ++k)
        for (int b = 0; b <= n; ++b) {
          const ForgetfulReport r = verify_forgetful_square(n, k, b);
          CHECK_MESSAGE(r.passed(), "n=" << n << " k=" << k << " b=" << b);
        }
    const ForgetfulReport r = verify_forgetful_square(6, 2, 0);
    CHECK(r.trees_checked == 70);
    CHECK(r.nonzero_paths == 10);
    CHECK_THROWS_AS(verify_forgetful_square(6, 1, 0), DomainError);
  }

  TEST_CASE("standard forms witness surjectivity onto every inner level") {
    for (int n = 6; n <= 9; ++n)
      for (int k = 2; k <= n - 4; ++k)
        for (const PairLabel& p : enumerate_p2(n, k)) {
          const MarkedTree s = standard_form(p, n);
          REQUIRE(s.dimension() == k);
          REQUIRE(filtration_level(s) == 2);
          CHECK(w_map(s) == p);
          CHECK(block_of(s) == BlockKey{2, inner_level(p, n)});
          CHECK(rewrite_to_standard(s).moves.empty());
        }
    CHECK_THROWS_AS(standard_form(PairLabel{MarkSet{1, 2}, 1, MarkSet{3, 4, 5}, 1}, 6), DomainError);
  }

  TEST_CASE("rewriting the two-swap example") {
    // cherry(1,2) - v1(3,4) - v2(5,6,7,8): marks 1 and 2 each need one swap to reach v1.
    Workbench wb;
    const MarkedTree t = tree(8, {MarkSet{1, 2}, MarkSet{5, 6, 7, 8}});
    const PairLabel p = w_map(t);
    CHECK(p == PairLabel{MarkSet{1, 2, 3, 4}, 1, MarkSet{5, 6, 7, 8}, 2});
    const RewriteResult res = rewrite_to_standard(t);
    CHECK(res.sigma0 == tree(8, {MarkSet{3, 4}, MarkSet{5, 6, 7, 8}}));
    CHECK(res.sigma0 == standard_form(p, 8));
    REQUIRE(res.moves.size() == 2);
    for (const RewriteMove& m : res.moves) CHECK(m.kind == RewriteMove::Kind::kKMSwap);
    CHECK(res.moves[0].b == MarkSet{1});
    CHECK(res.moves[1].b == MarkSet{2});
    MarkedTree replay = t;
    for (const RewriteMove& m : res.moves) replay = apply_move(replay, m);
    CHECK(replay == res.sigma0);
    CHECK(class_equal_modulo(wb, t, res.sigma0, {2, 1}));
    CHECK_FALSE(class_equal(wb, t, res.sigma0));
  }

  TEST_CASE("rewriting needs a rearrangement when the required mark is buried") {
    // v1 carries 4, 5 and a caterpillar ((1,2),3); mark 1 must first be combed to the top.
    const MarkedTree t = tree(8, {MarkSet{1, 2, 3}, MarkSet{1, 2}, MarkSet{6, 7, 8}});
    REQUIRE(filtration_level(t) == 2);
    const RewriteResult res = rewrite_to_standard(t);
    CHECK(res.sigma0 == standard_form(w_map(t), 8));
    CHECK(res.moves.front().kind == RewriteMove::Kind::kTrivalentRearrange);
    Workbench wb;
    CHECK(class_equal(wb, t, apply_move(t, res.moves.front())));
  }

  TEST_CASE("apply_move rejects absent edges") {
    RewriteMove m;
    m.removed = {MarkSet{2, 3}};
    CHECK_THROWS_AS(apply_move(tree(6, {MarkSet{4, 5, 6}}), m), DomainError);
  }

  TEST_CASE("exhaustive rewrite for n <= 7") {
    Workbench wb;
    for (auto [n, k] : {std::pair{6, 2}, {7, 2}, {7, 3}}) {
      const RewriteReport r = verify_rewrite(wb, n, k);
      CHECK(r.trees_checked > 0);
      for (const std::string& f : r.failures) FAIL_CHECK(f);
    }
    const RewriteReport sampled = verify_rewrite(wb, 7, 2, 50, 3);
    CHECK(sampled.trees_checked == 50);
    CHECK(sampled.passed());
  }

  TEST_CASE("every fiber of W rewrites to one tree") {
    for (int n = 6; n <= 7; ++n)
      for (int k = 2; k <= n - 4; ++k) {
        std::map<PairLabel, MarkedTree> seen;
        for (const MarkedTree& t : enumerate_strata(n, k)) {
          if (filtration_level(t) != 2) continue;
          const MarkedTree s = rewrite_to_standard(t).sigma0;
          auto [it, inserted] = seen.emplace(w_map(t), s);
          CHECK(it->second == s);
        }
        CHECK(seen.size() == enumerate_p2(n, k).size());
      }
  }
}
