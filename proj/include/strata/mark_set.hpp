#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace strata {

/// Maximum number of marks a MarkSet can hold (bit i stands for mark i).
inline constexpr int kMaxMarks = 30;

/// A set of marks drawn from {1, ..., kMaxMarks}, stored as a bitmask.
class MarkSet {
 public:
  constexpr MarkSet() = default;
  constexpr explicit MarkSet(std::uint32_t bits) : bits_(bits) {}
  MarkSet(std::initializer_list<int> marks) {
    for (int m : marks) bits_ |= bit(m);
  }

  static constexpr MarkSet single(int mark) { return MarkSet(bit(mark)); }
  /// {1, ..., n}
  static constexpr MarkSet full(int n) { return MarkSet(((std::uint32_t{1} << n) - 1) << 1); }
  static MarkSet of(const std::vector<int>& marks) {
    MarkSet s;
    for (int m : marks) s.bits_ |= bit(m);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int mark) const { return (bits_ & bit(mark)) != 0; }
  constexpr bool subset_of(MarkSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(MarkSet o) const { return (bits_ & o.bits_) == 0; }
  /// Smallest mark; undefined on the empty set.
  constexpr int min() const { return std::countr_zero(bits_); }
  constexpr int max() const { return 31 - std::countl_zero(bits_); }

  constexpr MarkSet operator|(MarkSet o) const { return MarkSet(bits_ | o.bits_); }
  constexpr MarkSet operator&(MarkSet o) const { return MarkSet(bits_ & o.bits_); }
  constexpr MarkSet operator-(MarkSet o) const { return MarkSet(bits_ & ~o.bits_); }
  MarkSet& operator|=(MarkSet o) { bits_ |= o.bits_; return *this; }
  MarkSet& operator&=(MarkSet o) { bits_ &= o.bits_; return *this; }
  MarkSet& operator-=(MarkSet o) { bits_ &= ~o.bits_; return *this; }

  constexpr bool operator==(const MarkSet&) const = default;

  /// Complement inside {1, ..., n}.
  constexpr MarkSet complement(int n) const { return full(n) - *this; }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) f(std::countr_zero(b));
  }

  std::string str() const {
    std::string s = "[";
    bool first = true;
    for_each([&](int m) {
      if (!first) s += ',';
      s += std::to_string(m);
      first = false;
    });
    return s + "]";
  }

 private:
  static constexpr std::uint32_t bit(int mark) { return std::uint32_t{1} << mark; }

  std::uint32_t bits_ = 0;
};

/// Lexicographic order on the sorted member lists ({1,2} < {1,2,3} < {1,3} < {2}).
inline bool lex_less(MarkSet a, MarkSet b) {
  std::uint32_t x = a.bits(), y = b.bits();
  while (x != 0 && y != 0) {
    const int lx = std::countr_zero(x), ly = std::countr_zero(y);
    if (lx != ly) return lx < ly;
    x &= x - 1;
    y &= y - 1;
  }
  return x == 0 && y != 0;
}

struct LexLess {
  bool operator()(MarkSet a, MarkSet b) const { return lex_less(a, b); }
};

}  // namespace strata

template <>
struct std::hash<strata::MarkSet> {
  std::size_t operator()(strata::MarkSet s) const noexcept { return std::hash<std::uint32_t>{}(s.bits()); }
};
