#include "strata/character.hpp"

#include "strata/errors.hpp"

namespace strata {

std::int64_t Character::at(const Partition& type) const {
  auto it = values.find(type);
  if (it == values.end()) throw DomainError("character has no value at cycle type " + format_cycle_type(type));
  return it->second;
}

Character Character::operator+(const Character& o) const {
  if (o.n != n) throw DomainError("adding characters of different degree");
  Character out = *this;
  for (const auto& [type, v] : o.values) out.values[type] += v;
  return out;
}

Character Character::operator-(const Character& o) const {
  if (o.n != n) throw DomainError("subtracting characters of different degree");
  Character out = *this;
  for (const auto& [type, v] : o.values) out.values[type] -= v;
  return out;
}

}  // namespace strata
