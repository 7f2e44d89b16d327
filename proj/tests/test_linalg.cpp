#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "strata/errors.hpp"
#include "strata/exact_linalg.hpp"
#include "strata/modular.hpp"
#include "strata/relations.hpp"

using namespace strata;

namespace {

SparseIntMatrix km_matrix(int n, int k) {
  const StrataIndex index(enumerate_strata(n, k));
  return relation_matrix(generate_relations(n, k), index);
}

SparseIntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int density_pct, int range) {
  SparseIntMatrix m(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    SparseIntVector row;
    for (std::uint32_t c = 0; c < cols; ++c)
      if (static_cast<int>(rng() % 100) < density_pct)
        row.emplace_back(c, static_cast<std::int64_t>(rng() % (2 * range + 1)) - range);
    m.add_row(std::move(row));
  }
  return m;
}

constexpr std::uint64_t kP = 4611686018427387847ULL;  // 2^62 - 57

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("primality and prime source") {
    CHECK(modp::is_prime(2));
    CHECK(modp::is_prime(1000000007ULL));
    CHECK(modp::is_prime(kP));
    CHECK_FALSE(modp::is_prime(1));
    CHECK_FALSE(modp::is_prime(1000000007ULL * 3));
    CHECK_FALSE(modp::is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    PrimeSource a(42), b(42);
    for (int i = 0; i < 5; ++i) {
      const std::uint64_t p = a.next();
      CHECK(p == b.next());
      CHECK(modp::is_prime(p));
      CHECK(p > (std::uint64_t{1} << 61));
    }
  }

  TEST_CASE("canonicalize merges and drops zeros") {
    SparseIntVector v{{3, 2}, {1, 5}, {3, -2}, {0, 0}, {1, 1}};
    canonicalize(v);
    CHECK(v == SparseIntVector{{1, 6}});
    SparseIntMatrix m(2);
    CHECK_THROWS_AS(m.add_row({{2, 1}}), DomainError);
  }

  TEST_CASE("rank_mod_p examples") {
    CHECK(rank_mod_p(SparseIntMatrix(0), kP) == 0);
    CHECK(rank_mod_p(SparseIntMatrix(7), kP) == 0);
    CHECK(rank_mod_p(km_matrix(4, 0), kP) == 2);
    CHECK(rank_mod_p(km_matrix(5, 0), kP) == 14);
  }

  TEST_CASE("rank_exact examples") {
    PrimeSource primes;
    SparseIntMatrix zero(4);
    zero.add_row({});
    CHECK(rank_exact(zero, primes) == 0);
    SparseIntMatrix id(5);
    for (std::uint32_t i = 0; i < 5; ++i) id.add_row({{i, 1}});
    CHECK(rank_exact(id, primes) == 5);
    CHECK(rank_exact(km_matrix(6, 1), primes) == 105 - 16);
  }

  TEST_CASE("an unlucky prime loses rank; random primes and Bareiss do not") {
    SparseIntMatrix m(2);
    m.add_row({{0, static_cast<std::int64_t>(1000000007)}, {1, 2}});
    m.add_row({{0, 0}, {1, 4}});
    m.add_row({{1, 2}});
    CHECK(rank_mod_p(m, 1000000007ULL) == 1);
    CHECK(rank_bareiss(m) == 2);
    PrimeSource primes;
    CHECK(rank_exact(m, primes) == 2);
  }

  TEST_CASE("sparse ranks agree with dense elimination and Bareiss") {
    std::mt19937_64 rng(3);
    PrimeSource primes(9);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t rows = 1 + rng() % 25, cols = 1 + rng() % 25;
      SparseIntMatrix m = random_matrix(rng, rows, cols, 10 + static_cast<int>(rng() % 40), 3);
      // Append dependent rows so that the rank is usually deficient.
      std::vector<SparseIntVector> extra;
      for (int e = 0; e < 5 && m.n_rows() >= 2; ++e) {
        SparseIntVector sum = m.rows()[rng() % m.n_rows()];
        const auto& other = m.rows()[rng() % m.n_rows()];
        for (const auto& [c, v] : other) sum.emplace_back(c, -3 * v);
        extra.push_back(std::move(sum));
      }
      m = m.stacked(extra);
      const std::size_t dense = oracle::dense_rank(m);
      CHECK(rank_mod_p(m, kP) == dense);
      CHECK(rank_exact(m, primes) == dense);
      CHECK(rank_bareiss(m) == dense);
    }
  }

  TEST_CASE("two random primes agree on relation matrices") {
    PrimeSource primes(17);
    for (int n = 4; n <= 7; ++n)
      for (int k = 0; k <= n - 4; ++k) {
        const SparseIntMatrix m = km_matrix(n, k);
        const std::uint64_t p = primes.next(), q = primes.next();
        CHECK(rank_mod_p(m, p) == rank_mod_p(m, q));
        if (n <= 6) {
          CHECK(rank_mod_p(m, p) == oracle::dense_rank(m));
          CHECK(rank_bareiss(m) == rank_mod_p(m, p));
        }
      }
  }

  TEST_CASE("quotient basis") {
    const SparseIntMatrix m = km_matrix(4, 0);
    const QuotientBasis q = QuotientBasis::build(m, kP);
    CHECK(q.rank() == 2);
    CHECK(q.dimension() == 1);
    for (const auto& row : m.rows()) CHECK(q.reduce(row).empty());
    const std::uint32_t f = q.free_cols()[0];
    CHECK(q.reduce({{f, 1}}) == QuotientBasis::Coordinates{{0, 1}});
    // (12|34) - (13|24): columns in enumeration order [[2,3]], [[2,4]], [[3,4]].
    CHECK(q.reduce({{2, 1}, {1, -1}}).empty());
    CHECK_FALSE(q.reduce({{2, 1}}).empty());
  }

  TEST_CASE("quotient basis structure on relation matrices") {
    std::mt19937_64 rng(8);
    for (auto [n, k] : {std::pair{5, 0}, {5, 1}, {6, 1}, {6, 2}}) {
      const SparseIntMatrix m = km_matrix(n, k);
      std::vector<std::uint32_t> order(m.n_cols());
      std::iota(order.begin(), order.end(), 0u);
      std::shuffle(order.begin(), order.end(), rng);
      const QuotientBasis q = QuotientBasis::build(m, kP, order);
      CHECK(q.rank() == oracle::dense_rank(m));
      CHECK(q.rank() + q.dimension() == m.n_cols());
      for (std::uint32_t c : q.free_cols()) CHECK_FALSE(q.is_pivot(c));
      for (std::uint32_t c : q.pivot_cols()) CHECK(q.is_pivot(c));
      for (const auto& row : m.rows()) CHECK(q.reduce(row).empty());
      // Free columns inside any suffix of the order span that suffix's image.
      PrimeSource primes;
      for (std::size_t cut : {std::size_t{0}, order.size() / 3, order.size() / 2, order.size() - 1}) {
        std::vector<SparseIntVector> suffix;
        std::set<std::uint32_t> in_suffix;
        for (std::size_t i = cut; i < order.size(); ++i) {
          suffix.push_back({{order[i], 1}});
          in_suffix.insert(order[i]);
        }
        std::size_t free_in_suffix = 0;
        for (std::uint32_t c : q.free_cols()) free_in_suffix += in_suffix.count(c);
        CHECK(span_dim_in_quotient(m, suffix, primes) == free_in_suffix);
      }
      // Coordinates are linear and unit_coordinate agrees with reduce.
      for (std::uint32_t col = 0; col < m.n_cols(); ++col) {
        const auto coords = q.reduce({{col, 1}});
        for (std::uint32_t f = 0; f < q.dimension(); ++f) {
          std::uint64_t expected = 0;
          for (const auto& [idx, v] : coords)
            if (idx == f) expected = v;
          REQUIRE(q.unit_coordinate(col, f) == expected);
        }
      }
    }
  }

  TEST_CASE("span dimensions") {
    PrimeSource primes;
    const int n = 6, k = 2;
    const StrataIndex index(enumerate_strata(n, k));
    const SparseIntMatrix m = relation_matrix(generate_relations(n, k), index);
    CHECK(span_dim_in_quotient(m, {}, primes) == 0);
    std::vector<SparseIntVector> all, level2;
    for (std::uint32_t id = 0; id < index.size(); ++id) {
      all.push_back({{id, 1}});
      if (filtration_level(index[id]) >= 2) level2.push_back({{id, 1}});
    }
    CHECK(span_dim_in_quotient(m, all, primes) == 16);
    CHECK(span_dim_in_quotient(m, level2, primes) == 10);
    // Monotone along a growing prefix of unit vectors.
    std::size_t prev = 0;
    for (std::size_t len = 0; len <= all.size(); len += 3) {
      const std::size_t d = span_dim_in_quotient(m, std::span(all).first(len), primes);
      CHECK(d >= prev);
      prev = d;
    }
  }
}
