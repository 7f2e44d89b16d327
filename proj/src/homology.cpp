#include "strata/homology.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "strata/errors.hpp"
#include "strata/modular.hpp"
#include "strata/relations.hpp"

namespace strata {

namespace {

constexpr int kMaxPrimeAttempts = 8;

void check_nk(int n, int k) {
  if (n < 3 || n > kMaxMarks || k < 0 || k > n - 3)
    throw DomainError("(n, k) = (" + std::to_string(n) + ", " + std::to_string(k) + ") outside 3 <= n, 0 <= k <= n-3");
}

std::vector<SparseIntVector> unit_vectors(const StrataIndex& index, auto&& keep) {
  std::vector<SparseIntVector> out;
  for (std::size_t id = 0; id < index.size(); ++id)
    if (keep(index[id])) out.push_back({{static_cast<std::uint32_t>(id), 1}});
  return out;
}

}  // namespace

BlockKey block_of(const MarkedTree& t) {
  const int r = filtration_level(t);
  return {r, r == 2 ? decompose_two_vertex(t).middle.size() : 0};
}

StrataSystem::StrataSystem(int n, int k, std::vector<MarkedTree> strata, SparseIntMatrix relations,
                           PrimeSource& primes)
    : n_(n), k_(k), index_(std::move(strata)), relations_(std::move(relations)) {
  if (relations_.n_cols() != index_.size()) throw DomainError("relation matrix width does not match S_{k,n}");
  blocks_.reserve(index_.size());
  for (const MarkedTree& t : index_.trees()) blocks_.push_back(block_of(t));

  std::vector<std::uint32_t> order(index_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return blocks_[a] < blocks_[b]; });

  // Two primes agreeing on the pivot set certify it; unlucky primes can only lose pivots.
  std::vector<QuotientBasis> tried;
  {
    const std::uint64_t p1 = primes.next(), p2 = primes.next();
    auto first = std::async(std::launch::async, [&] { return QuotientBasis::build(relations_, p1, order); });
    tried.push_back(QuotientBasis::build(relations_, p2, order));
    tried.push_back(first.get());
  }
  auto agreeing_pair = [&]() -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::size_t best = 0;
    for (const auto& q : tried) best = std::max(best, q.rank());
    for (std::size_t i = 0; i < tried.size(); ++i)
      for (std::size_t j = i + 1; j < tried.size(); ++j)
        if (tried[i].rank() == best && tried[i].pivot_cols() == tried[j].pivot_cols()) return std::pair{i, j};
    return std::nullopt;
  };
  for (;;) {
    if (const auto pair = agreeing_pair()) {
      bases_ = {std::move(tried[pair->first]), std::move(tried[pair->second])};
      break;
    }
    if (static_cast<int>(tried.size()) >= kMaxPrimeAttempts)
      throw CertificationError("quotient basis for (n, k) = (" + std::to_string(n) + ", " + std::to_string(k) +
                               ") not certified within " + std::to_string(kMaxPrimeAttempts) + " primes");
    tried.push_back(QuotientBasis::build(relations_, primes.next(), order));
  }
  free_blocks_.reserve(bases_[0].dimension());
  for (std::uint32_t col : bases_[0].free_cols()) free_blocks_.push_back(blocks_[col]);
}

std::uint32_t StrataSystem::free_begin(BlockKey key) const {
  return static_cast<std::uint32_t>(std::lower_bound(free_blocks_.begin(), free_blocks_.end(), key) -
                                    free_blocks_.begin());
}

std::int64_t StrataSystem::trace(const Permutation& g, BlockKey from, BlockKey to) const {
  const std::uint32_t lo = free_begin(from), hi = free_begin(to);
  std::array<std::uint64_t, 2> sums{0, 0};
  for (std::uint32_t f = lo; f < hi; ++f) {
    const auto image = static_cast<std::uint32_t>(index_.id(apply_permutation(index_[bases_[0].free_cols()[f]], g)));
    for (int i = 0; i < 2; ++i)
      sums[i] = modp::add(sums[i], bases_[i].unit_coordinate(image, f), bases_[i].prime());
  }
  const std::int64_t t0 = modp::to_signed(sums[0], bases_[0].prime());
  const std::int64_t t1 = modp::to_signed(sums[1], bases_[1].prime());
  if (t0 != t1) throw CertificationError("trace disagrees between primes: " + std::to_string(t0) + " vs " + std::to_string(t1));
  return t0;
}

bool StrataSystem::congruent_to_zero(const SparseIntVector& v, BlockKey modulo) const {
  const std::uint32_t limit = free_begin(modulo);
  std::array<bool, 2> zero{};
  for (int i = 0; i < 2; ++i) {
    const auto coords = bases_[i].reduce(v);
    zero[i] = std::none_of(coords.begin(), coords.end(), [&](const auto& e) { return e.first < limit; });
  }
  if (zero[0] != zero[1]) throw CertificationError("class membership disagrees between primes");
  return zero[0];
}

Workbench::Workbench(WorkbenchOptions options) : options_(std::move(options)), primes_(options_.seed) {
  if (options_.cache_dir) cache_.emplace(*options_.cache_dir);
}

std::vector<MarkedTree> Workbench::strata(int n, int k) {
  check_nk(n, k);
  if (cache_) {
    if (auto hit = cache_->load_strata(n, k)) return std::move(*hit);
  }
  auto trees = enumerate_strata(n, k);
  if (cache_) cache_->store_strata(n, k, trees);
  return trees;
}

SparseIntMatrix Workbench::relations(int n, int k) {
  check_nk(n, k);
  if (k == n - 3) return SparseIntMatrix(1);
  if (cache_) {
    if (auto hit = cache_->load_relations(n, k)) return std::move(*hit);
  }
  const StrataIndex index(strata(n, k));
  SparseIntMatrix m = relation_matrix(generate_relations(n, k), index);
  if (cache_) cache_->store_relations(n, k, m);
  return m;
}

const StrataSystem& Workbench::system(int n, int k) {
  auto& slot = systems_[{n, k}];
  if (!slot) {
    slot = std::make_unique<StrataSystem>(n, k, strata(n, k), relations(n, k), primes_);
    if (options_.exact_audit && n <= options_.audit_max_n) {
      const std::size_t exact = slot->strata().size() - rank_bareiss(slot->relations());
      if (exact != slot->betti())
        throw CertificationError("audit: fraction-free Betti number " + std::to_string(exact) +
                                 " differs from modular " + std::to_string(slot->betti()));
    }
  }
  return *slot;
}

std::size_t Workbench::certified_rank(const SparseIntMatrix& m, int n) {
  const std::size_t r = rank_exact(m, primes_);
  if (options_.exact_audit && n <= options_.audit_max_n) {
    const std::size_t exact = rank_bareiss(m);
    if (exact != r)
      throw CertificationError("audit: fraction-free rank " + std::to_string(exact) + " differs from modular " +
                               std::to_string(r));
  }
  return r;
}

std::size_t betti(Workbench& wb, int n, int k) {
  check_nk(n, k);
  const std::size_t count = wb.strata(n, k).size();
  return count - wb.certified_rank(wb.relations(n, k), n);
}

GradedDims graded_dims(Workbench& wb, int n, int k) {
  check_nk(n, k);
  GradedDims out{n, k, {}};
  if (k == 0) return out;
  const StrataIndex index(wb.strata(n, k));
  const SparseIntMatrix rel = wb.relations(n, k);
  const int top = std::min(k, n - 2 - k);
  std::vector<std::size_t> span(top + 2, 0);
  for (int r = 1; r <= top; ++r) {
    const auto vs = unit_vectors(index, [&](const MarkedTree& t) { return filtration_level(t) >= r; });
    span[r] = span_dim_in_quotient(rel, vs, wb.primes());
  }
  for (int r = 1; r <= top; ++r) out.dims.push_back(span[r] - span[r + 1]);
  return out;
}

std::vector<std::size_t> inner_graded_dims(Workbench& wb, int n, int k) {
  check_nk(n, k);
  if (k < 2 || k > n - 4) throw DomainError("inner_graded_dims: need 2 <= k <= n-4");
  const StrataIndex index(wb.strata(n, k));
  const SparseIntMatrix rel = wb.relations(n, k);
  const int top = n - k - 4;
  std::vector<std::size_t> span(top + 2, 0);
  for (int b = 0; b <= top + 1; ++b) {
    const auto vs = unit_vectors(index, [&](const MarkedTree& t) { return block_of(t) >= BlockKey{2, b}; });
    span[b] = span_dim_in_quotient(rel, vs, wb.primes());
  }
  std::vector<std::size_t> out;
  for (int b = 0; b <= top; ++b) out.push_back(span[b] - span[b + 1]);
  return out;
}

bool class_equal_modulo(Workbench& wb, const MarkedTree& t1, const MarkedTree& t2, BlockKey modulo) {
  if (t1.n() != t2.n() || t1.dimension() != t2.dimension())
    throw DomainError("class_equal: trees lie in different S_{k,n}");
  const StrataSystem& sys = wb.system(t1.n(), t1.dimension());
  SparseIntVector v{{static_cast<std::uint32_t>(sys.strata().id(t1)), 1},
                    {static_cast<std::uint32_t>(sys.strata().id(t2)), -1}};
  canonicalize(v);
  return sys.congruent_to_zero(v, modulo);
}

bool class_equal(Workbench& wb, const MarkedTree& t1, const MarkedTree& t2) {
  return class_equal_modulo(wb, t1, t2, BlockKey::end());
}

Character character_homology(Workbench& wb, int n, int k) {
  const StrataSystem& sys = wb.system(n, k);
  return character_from(n, [&](const Permutation& g) { return sys.trace(g, BlockKey{}, BlockKey::end()); });
}

Character character_graded(Workbench& wb, int n, int k, int r) {
  check_nk(n, k);
  if (r < 1 || r > std::min(k, n - 2 - k)) throw DomainError("character_graded: r outside 1..min(k, n-2-k)");
  const StrataSystem& sys = wb.system(n, k);
  return character_from(n, [&](const Permutation& g) { return sys.trace(g, BlockKey{r, 0}, BlockKey{r + 1, 0}); });
}

}  // namespace strata
