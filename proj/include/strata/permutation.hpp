#pragma once

#include <string>
#include <vector>

#include "strata/mark_set.hpp"

namespace strata {

/// A bijection of {1, ..., n}.
class Permutation {
 public:
  /// The identity on {1, ..., n}.
  explicit Permutation(int n);
  /// `images[i - 1]` is the image of mark i. Throws DomainError unless a bijection.
  static Permutation from_images(std::vector<int> images);
  /// Product of the given cycles (each a list of marks), e.g. {{1, 4}} for (1 4).
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int n() const { return static_cast<int>(images_.size()); }
  int operator()(int mark) const { return images_[mark - 1]; }
  MarkSet operator()(MarkSet s) const;

  /// (g * h)(x) = g(h(x)).
  Permutation operator*(const Permutation& h) const;
  Permutation inverse() const;
  bool operator==(const Permutation&) const = default;

  /// Cycle lengths in weakly decreasing order.
  std::vector<int> cycle_type() const;
  const std::vector<int>& images() const { return images_; }

 private:
  std::vector<int> images_;
};

/// A partition of n, parts weakly decreasing.
using Partition = std::vector<int>;

/// All partitions of n in reverse lexicographic order ((n), (n-1,1), ...).
std::vector<Partition> partitions_of(int n);

/// Representative permutation of a cycle type: consecutive cycles (1..λ1)(λ1+1..λ1+λ2)...
Permutation cycle_type_representative(const Partition& type);

/// Exponent notation for a cycle type, e.g. (2,1,1,1,1) -> "2,1^4", (1^6) -> "1^6".
std::string format_cycle_type(const Partition& type);

}  // namespace strata
