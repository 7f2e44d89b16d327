#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <vector>

namespace strata {

using BigInt = boost::multiprecision::cpp_int;

struct FormulaValue {
  int n = 0, k = 0, r = 0;
  BigInt value;
};

/// (1/r!) Σ over compositions α of k into r positive parts and p_i >= α_i + 2, b >= 0 with
/// Σ p_i + b = n + r - 2 of the multinomial (n+r-2; p_1, ..., p_r, b).
/// Throws DomainError unless 1 <= r <= min(k, n-2-k). Throws CertificationError if the
/// weighted sum is not divisible by r!.
FormulaValue q_dim_formula(int n, int k, int r);

/// Σ_r q_dim_formula(n, k, r); 1 for k = 0. Throws DomainError unless 0 <= k <= n-3.
BigInt betti_formula(int n, int k);

/// All (k, r) values for 0 <= k <= n-3 at each n in [n_lo, n_hi].
std::vector<FormulaValue> formula_table(int n_lo, int n_hi);

/// "n,k,r,value" rows with a header line.
void write_csv(std::ostream& out, const std::vector<FormulaValue>& rows);

}  // namespace strata
