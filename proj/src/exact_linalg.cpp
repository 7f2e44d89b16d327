#include "strata/exact_linalg.hpp"

#include <algorithm>
#include <future>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "strata/errors.hpp"
#include "strata/modular.hpp"

namespace strata {

namespace modp {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 random_prime(std::mt19937_64& rng, int bits) {
  if (bits < 3 || bits > 63) throw DomainError("random_prime: bits must lie in [3, 63]");
  const u64 lo = u64{1} << (bits - 1);
  std::uniform_int_distribution<u64> dist(lo, (lo << 1) - 1);
  for (;;) {
    const u64 candidate = dist(rng) | 1;
    if (is_prime(candidate)) return candidate;
  }
}

}  // namespace modp

namespace {

using modp::u64;
using ModRow = std::vector<std::pair<std::uint32_t, u64>>;

ModRow to_mod(const SparseIntVector& v, u64 p) {
  ModRow out;
  out.reserve(v.size());
  for (auto [c, x] : v) {
    const u64 r = modp::from_signed(x, p);
    if (r != 0) out.emplace_back(c, r);
  }
  return out;
}

// dst -= f * src, both sorted; entries that cancel are dropped.
void sub_mul(ModRow& dst, const ModRow& src, u64 f, u64 p, ModRow& scratch) {
  scratch.clear();
  scratch.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      scratch.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      scratch.emplace_back(src[j].first, modp::neg(modp::mul(f, src[j].second, p), p));
      ++j;
    } else {
      const u64 v = modp::sub(dst[i].second, modp::mul(f, src[j].second, p), p);
      if (v != 0) scratch.emplace_back(dst[i].first, v);
      ++i;
      ++j;
    }
  }
  dst.swap(scratch);
}

const u64* find_entry(const ModRow& row, std::uint32_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != row.end() && it->first == col ? &it->second : nullptr;
}

}  // namespace

void canonicalize(SparseIntVector& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseIntVector out;
  out.reserve(v.size());
  for (const auto& [c, x] : v) {
    if (!out.empty() && out.back().first == c)
      out.back().second += x;
    else
      out.emplace_back(c, x);
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  v.swap(out);
}

void SparseIntMatrix::add_row(SparseIntVector row) {
  canonicalize(row);
  if (!row.empty() && row.back().first >= n_cols_)
    throw DomainError("column index " + std::to_string(row.back().first) + " out of range");
  rows_.push_back(std::move(row));
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

SparseIntMatrix SparseIntMatrix::stacked(std::span<const SparseIntVector> extra) const {
  SparseIntMatrix out = *this;
  for (const auto& v : extra) out.add_row(v);
  return out;
}

std::uint64_t PrimeSource::next() { return modp::random_prime(rng_, bits_); }

std::size_t rank_mod_p(const SparseIntMatrix& m, std::uint64_t p) {
  const std::size_t nrows = m.n_rows();
  std::vector<ModRow> rows(nrows);
  std::vector<std::size_t> col_count(m.n_cols(), 0);
  std::vector<std::vector<std::uint32_t>> col_rows(m.n_cols());
  std::set<std::pair<std::size_t, std::uint32_t>> active;
  for (std::size_t i = 0; i < nrows; ++i) {
    rows[i] = to_mod(m.rows()[i], p);
    for (auto [c, _] : rows[i]) {
      ++col_count[c];
      col_rows[c].push_back(static_cast<std::uint32_t>(i));
    }
    if (!rows[i].empty()) active.emplace(rows[i].size(), static_cast<std::uint32_t>(i));
  }

  std::vector<bool> done(nrows, false);
  ModRow scratch;
  std::size_t rank = 0;
  while (!active.empty()) {
    const std::uint32_t r = active.begin()->second;
    active.erase(active.begin());
    done[r] = true;
    const ModRow& piv = rows[r];

    std::uint32_t col = piv.front().first;
    u64 pval = piv.front().second;
    for (auto [c, x] : piv) {
      if (col_count[c] < col_count[col]) {
        col = c;
        pval = x;
      }
    }
    for (auto [c, _] : piv) --col_count[c];
    const u64 pinv = modp::inv(pval, p);

    for (std::uint32_t i : col_rows[col]) {
      if (done[i]) continue;
      const u64* e = find_entry(rows[i], col);
      if (!e) continue;
      const u64 f = modp::mul(*e, pinv, p);
      active.erase({rows[i].size(), i});
      for (auto [c, _] : rows[i]) --col_count[c];
      sub_mul(rows[i], piv, f, p, scratch);
      for (auto [c, _] : rows[i]) ++col_count[c];
      for (auto [c, _] : piv)
        if (c != col) col_rows[c].push_back(i);
      if (!rows[i].empty()) active.emplace(rows[i].size(), i);
    }
    col_rows[col].clear();
    col_rows[col].shrink_to_fit();
    rows[r].clear();
    rows[r].shrink_to_fit();
    ++rank;
  }
  return rank;
}

std::size_t rank_exact(const SparseIntMatrix& m, PrimeSource& primes, int max_primes) {
  const u64 p1 = primes.next(), p2 = primes.next();
  auto f1 = std::async(std::launch::async, [&] { return rank_mod_p(m, p1); });
  const std::size_t r2 = rank_mod_p(m, p2);
  const std::size_t r1 = f1.get();
  if (r1 == r2) return r1;

  // An unlucky prime can only lower the rank, so the true rank is the maximum seen.
  std::vector<std::size_t> seen{r1, r2};
  for (int used = 2; used < max_primes; ++used) {
    seen.push_back(rank_mod_p(m, primes.next()));
    const std::size_t best = *std::max_element(seen.begin(), seen.end());
    if (std::count(seen.begin(), seen.end(), best) >= 2) return best;
  }
  throw CertificationError("rank_exact: modular ranks did not agree within " + std::to_string(max_primes) + " primes");
}

std::size_t rank_bareiss(const SparseIntMatrix& m) {
  using boost::multiprecision::cpp_int;
  const std::size_t nrows = m.n_rows(), ncols = m.n_cols();
  std::vector<std::vector<cpp_int>> a(nrows, std::vector<cpp_int>(ncols));
  for (std::size_t i = 0; i < nrows; ++i)
    for (auto [c, x] : m.rows()[i]) a[i][c] = x;

  cpp_int prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
    std::size_t pivot = rank;
    while (pivot < nrows && a[pivot][col] == 0) ++pivot;
    if (pivot == nrows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < nrows; ++i) {
      for (std::size_t j = col + 1; j < ncols; ++j) a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::size_t span_dim_in_quotient(const SparseIntMatrix& m, std::span<const SparseIntVector> vectors,
                                 PrimeSource& primes) {
  if (vectors.empty()) return 0;
  const SparseIntMatrix both = m.stacked(vectors);
  return rank_exact(both, primes) - rank_exact(m, primes);
}

QuotientBasis QuotientBasis::build(const SparseIntMatrix& m, std::uint64_t p, std::span<const std::uint32_t> order) {
  const std::size_t ncols = m.n_cols();
  std::vector<std::uint32_t> col_at(ncols), pos_of(ncols);
  if (order.empty()) {
    for (std::uint32_t i = 0; i < ncols; ++i) col_at[i] = i;
  } else {
    if (order.size() != ncols) throw DomainError("QuotientBasis: column order has the wrong length");
    col_at.assign(order.begin(), order.end());
  }
  std::vector<bool> seen(ncols, false);
  for (std::uint32_t i = 0; i < ncols; ++i) {
    if (col_at[i] >= ncols || seen[col_at[i]]) throw DomainError("QuotientBasis: column order is not a permutation");
    seen[col_at[i]] = true;
    pos_of[col_at[i]] = i;
  }

  // Forward elimination, bucketing rows by leading position.
  std::vector<ModRow> rows;
  rows.reserve(m.n_rows());
  std::vector<std::vector<std::uint32_t>> bucket(ncols);
  for (const auto& r : m.rows()) {
    ModRow row = to_mod(r, p);
    for (auto& e : row) e.first = pos_of[e.first];
    std::sort(row.begin(), row.end());
    if (row.empty()) continue;
    bucket[row.front().first].push_back(static_cast<std::uint32_t>(rows.size()));
    rows.push_back(std::move(row));
  }

  std::vector<ModRow> echelon(ncols);
  std::vector<bool> pivot_pos(ncols, false);
  ModRow scratch;
  for (std::uint32_t c = 0; c < ncols; ++c) {
    std::vector<std::uint32_t> here = std::move(bucket[c]);
    if (here.empty()) continue;
    const auto best = *std::min_element(here.begin(), here.end(),
                                        [&](std::uint32_t x, std::uint32_t y) { return rows[x].size() < rows[y].size(); });
    ModRow piv = std::move(rows[best]);
    const u64 lead_inv = modp::inv(piv.front().second, p);
    for (auto& e : piv) e.second = modp::mul(e.second, lead_inv, p);
    for (std::uint32_t i : here) {
      if (i == best) continue;
      sub_mul(rows[i], piv, rows[i].front().second, p, scratch);
      if (rows[i].empty()) {
        rows[i].shrink_to_fit();
        continue;
      }
      bucket[rows[i].front().first].push_back(i);
    }
    echelon[c] = std::move(piv);
    pivot_pos[c] = true;
  }

  QuotientBasis q;
  q.prime_ = p;
  q.is_pivot_.assign(ncols, false);
  q.free_index_.assign(ncols, 0);
  std::vector<std::uint32_t> free_of_pos(ncols, 0);
  for (std::uint32_t c = 0; c < ncols; ++c) {
    const std::uint32_t col = col_at[c];
    if (pivot_pos[c]) {
      q.is_pivot_[col] = true;
      q.pivot_cols_.push_back(col);
    } else {
      free_of_pos[c] = static_cast<std::uint32_t>(q.free_cols_.size());
      q.free_index_[col] = free_of_pos[c];
      q.free_cols_.push_back(col);
    }
  }

  // Back substitution from the right: reduced rows only touch their pivot and free columns.
  std::vector<Coordinates> reduced_pos(ncols);
  std::vector<u64> acc(q.free_cols_.size(), 0);
  std::vector<bool> touched(q.free_cols_.size(), false);
  std::vector<std::uint32_t> touched_list;
  auto bump = [&](std::uint32_t f, u64 v) {
    if (!touched[f]) {
      touched[f] = true;
      touched_list.push_back(f);
    }
    acc[f] = modp::add(acc[f], v, p);
  };
  for (std::uint32_t c = static_cast<std::uint32_t>(ncols); c-- > 0;) {
    if (!pivot_pos[c]) continue;
    const ModRow& row = echelon[c];
    for (std::size_t t = 1; t < row.size(); ++t) {
      const auto [qpos, val] = row[t];
      if (!pivot_pos[qpos]) {
        bump(free_of_pos[qpos], val);
      } else {
        for (const auto& [f, w] : reduced_pos[qpos]) bump(f, modp::neg(modp::mul(val, w, p), p));
      }
    }
    std::sort(touched_list.begin(), touched_list.end());
    Coordinates out;
    out.reserve(touched_list.size());
    for (std::uint32_t f : touched_list) {
      if (acc[f] != 0) out.emplace_back(f, acc[f]);
      acc[f] = 0;
      touched[f] = false;
    }
    touched_list.clear();
    reduced_pos[c] = std::move(out);
    echelon[c].clear();
    echelon[c].shrink_to_fit();
  }

  q.reduced_.resize(ncols);
  for (std::uint32_t c = 0; c < ncols; ++c)
    if (pivot_pos[c]) q.reduced_[col_at[c]] = std::move(reduced_pos[c]);
  return q;
}

QuotientBasis::Coordinates QuotientBasis::reduce(const SparseIntVector& v) const {
  const u64 p = prime_;
  Coordinates terms;
  for (const auto& [col, x] : v) {
    if (col >= n_cols()) throw DomainError("QuotientBasis::reduce: column out of range");
    const u64 r = modp::from_signed(x, p);
    if (r == 0) continue;
    if (!is_pivot_[col]) {
      terms.emplace_back(free_index_[col], r);
    } else {
      for (const auto& [f, w] : reduced_[col]) terms.emplace_back(f, modp::neg(modp::mul(r, w, p), p));
    }
  }
  std::sort(terms.begin(), terms.end());
  Coordinates out;
  for (const auto& [f, x] : terms) {
    if (!out.empty() && out.back().first == f)
      out.back().second = modp::add(out.back().second, x, p);
    else
      out.emplace_back(f, x);
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

std::uint64_t QuotientBasis::unit_coordinate(std::uint32_t col, std::uint32_t free_idx) const {
  if (!is_pivot_[col]) return free_index_[col] == free_idx ? 1 : 0;
  const auto& row = reduced_[col];
  auto it = std::lower_bound(row.begin(), row.end(), free_idx, [](const auto& e, std::uint32_t f) { return e.first < f; });
  return it != row.end() && it->first == free_idx ? modp::neg(it->second, prime_) : 0;
}

}  // namespace strata
