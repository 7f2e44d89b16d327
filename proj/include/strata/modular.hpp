#pragma once

#include <cstdint>
#include <random>

namespace strata::modp {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add(u64 a, u64 b, u64 p) {
  const u64 s = a + b;  // a, b < p < 2^63, no overflow
  return s >= p ? s - p : s;
}
inline u64 sub(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mul(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }
inline u64 neg(u64 a, u64 p) { return a == 0 ? 0 : p - a; }

inline u64 pow(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) result = mul(result, base, p);
    base = mul(base, base, p);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a nonzero residue modulo a prime.
inline u64 inv(u64 a, u64 p) { return pow(a, p - 2, p); }

/// Reduces a signed integer into [0, p).
inline u64 from_signed(std::int64_t x, u64 p) {
  const std::int64_t r = x % static_cast<std::int64_t>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

/// Symmetric lift of a residue to (-p/2, p/2].
inline std::int64_t to_signed(u64 a, u64 p) {
  return a > p / 2 ? -static_cast<std::int64_t>(p - a) : static_cast<std::int64_t>(a);
}

/// Deterministic Miller–Rabin for 64-bit inputs.
bool is_prime(u64 n);

/// Uniformly random prime in [2^(bits-1), 2^bits); bits in [3, 63].
u64 random_prime(std::mt19937_64& rng, int bits = 62);

}  // namespace strata::modp
