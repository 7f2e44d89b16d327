#include "strata/permutation.hpp"

#include <algorithm>
#include <functional>

#include "strata/errors.hpp"

namespace strata {

Permutation::Permutation(int n) : images_(n) {
  for (int i = 0; i < n; ++i) images_[i] = i + 1;
}

Permutation Permutation::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<bool> seen(n + 1, false);
  for (int x : images) {
    if (x < 1 || x > n || seen[x]) throw DomainError("permutation images are not a bijection of {1..n}");
    seen[x] = true;
  }
  Permutation p(0);
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = i + 1;
  std::vector<bool> used(n + 1, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const int x = cycle[i];
      if (x < 1 || x > n || used[x]) throw DomainError("cycles must be disjoint and lie in {1..n}");
      used[x] = true;
      images[x - 1] = cycle[(i + 1) % cycle.size()];
    }
  }
  return from_images(std::move(images));
}

MarkSet Permutation::operator()(MarkSet s) const {
  MarkSet out;
  s.for_each([&](int m) { out |= MarkSet::single(images_[m - 1]); });
  return out;
}

Permutation Permutation::operator*(const Permutation& h) const {
  if (h.n() != n()) throw DomainError("composing permutations of different degree");
  std::vector<int> images(n());
  for (int x = 1; x <= n(); ++x) images[x - 1] = (*this)(h(x));
  Permutation p(0);
  p.images_ = std::move(images);
  return p;
}

Permutation Permutation::inverse() const {
  std::vector<int> images(n());
  for (int x = 1; x <= n(); ++x) images[(*this)(x) - 1] = x;
  Permutation p(0);
  p.images_ = std::move(images);
  return p;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> type;
  std::vector<bool> seen(n() + 1, false);
  for (int x = 1; x <= n(); ++x) {
    if (seen[x]) continue;
    int len = 0;
    for (int y = x; !seen[y]; y = (*this)(y)) {
      seen[y] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition current;
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      rec(remaining - part, part);
      current.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Permutation cycle_type_representative(const Partition& type) {
  int n = 0;
  for (int part : type) n += part;
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int part : type) {
    std::vector<int> cycle;
    for (int i = 0; i < part; ++i) cycle.push_back(next++);
    cycles.push_back(std::move(cycle));
  }
  return Permutation::from_cycles(n, cycles);
}

std::string format_cycle_type(const Partition& type) {
  std::string out;
  for (std::size_t i = 0; i < type.size();) {
    std::size_t j = i;
    while (j < type.size() && type[j] == type[i]) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(type[i]);
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace strata
