#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "strata/permutation.hpp"

namespace strata {

/// An integer class function on S_n, stored by cycle type. Iteration order is the
/// lexicographic order of partitions, starting at 1^n.
struct Character {
  int n = 0;
  std::map<Partition, std::int64_t> values;

  std::int64_t at(const Partition& type) const;
  /// Value at the identity.
  std::int64_t degree() const { return at(Partition(static_cast<std::size_t>(n), 1)); }

  Character operator+(const Character& o) const;
  Character operator-(const Character& o) const;
  bool operator==(const Character&) const = default;
};

/// Builds a character by evaluating `f` on one representative per cycle type.
template <class F>
Character character_from(int n, F&& f) {
  Character chi{n, {}};
  for (const Partition& type : partitions_of(n)) chi.values[type] = f(cycle_type_representative(type));
  return chi;
}

}  // namespace strata
