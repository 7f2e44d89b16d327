#include "strata/conjecture.hpp"

#include <algorithm>
#include <string>

#include "strata/errors.hpp"

namespace strata {

namespace {

BigInt factorial(int m) {
  BigInt f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

// Σ over p_i >= lo_i (i >= idx) and b >= 0 with Σ p_i + b = remaining of 1 / (Π p_i! · b!),
// scaled by `total_fact` so everything stays integral.
void sum_parts(const std::vector<int>& lo, std::size_t idx, int remaining, const BigInt& denom, const BigInt& total_fact,
               const std::vector<BigInt>& fact, BigInt& acc) {
  if (idx == lo.size()) {
    acc += total_fact / (denom * fact[remaining]);
    return;
  }
  int rest_min = 0;
  for (std::size_t j = idx + 1; j < lo.size(); ++j) rest_min += lo[j];
  for (int p = lo[idx]; p + rest_min <= remaining; ++p)
    sum_parts(lo, idx + 1, remaining - p, denom * fact[p], total_fact, fact, acc);
}

void sum_compositions(int k_left, int parts_left, std::vector<int>& lo, int total, const std::vector<BigInt>& fact,
                      BigInt& acc) {
  if (parts_left == 0) {
    if (k_left == 0) sum_parts(lo, 0, total, BigInt(1), fact[total], fact, acc);
    return;
  }
  for (int a = 1; a <= k_left - (parts_left - 1); ++a) {
    lo.push_back(a + 2);
    sum_compositions(k_left - a, parts_left - 1, lo, total, fact, acc);
    lo.pop_back();
  }
}

}  // namespace

FormulaValue q_dim_formula(int n, int k, int r) {
  if (k < 0 || r < 1 || r > std::min(k, n - 2 - k))
    throw DomainError("q_dim_formula: r = " + std::to_string(r) + " outside 1..min(k, n-2-k)");
  const int total = n + r - 2;
  std::vector<BigInt> fact(total + 1);
  for (int i = 0; i <= total; ++i) fact[i] = factorial(i);
  BigInt acc = 0;
  std::vector<int> lo;
  sum_compositions(k, r, lo, total, fact, acc);
  const BigInt rf = factorial(r);
  if (acc % rf != 0) throw CertificationError("q_dim_formula: sum not divisible by r!");
  return {n, k, r, acc / rf};
}

BigInt betti_formula(int n, int k) {
  if (k < 0 || k > n - 3) throw DomainError("betti_formula: need 0 <= k <= n-3");
  if (k == 0) return 1;
  BigInt sum = 0;
  for (int r = 1; r <= std::min(k, n - 2 - k); ++r) sum += q_dim_formula(n, k, r).value;
  return sum;
}

std::vector<FormulaValue> formula_table(int n_lo, int n_hi) {
  std::vector<FormulaValue> rows;
  for (int n = n_lo; n <= n_hi; ++n)
    for (int k = 0; k <= n - 3; ++k)
      for (int r = 1; r <= std::min(k, n - 2 - k); ++r) rows.push_back(q_dim_formula(n, k, r));
  return rows;
}

void write_csv(std::ostream& out, const std::vector<FormulaValue>& rows) {
  out << "n,k,r,value\n";
  for (const FormulaValue& v : rows) out << v.n << ',' << v.k << ',' << v.r << ',' << v.value << '\n';
}

}  // namespace strata
