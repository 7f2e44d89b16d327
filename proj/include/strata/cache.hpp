#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strata/exact_linalg.hpp"
#include "strata/trees.hpp"

namespace strata {

/// Bumping this invalidates every existing cache entry.
inline constexpr std::string_view kCacheVersion = "strata-lab/1";

/// Content-addressed on-disk store of strata enumerations and relation matrices.
///
/// Entries are named by a hash of (version, generator, n, k); each file repeats the key in
/// its header and is ignored if the header does not match. Writes go to a temporary file
/// that is renamed into place.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir);

  /// $STRATA_CACHE_DIR, else ~/.cache/strata-lab.
  static std::filesystem::path default_dir();
  /// 16 hex digits of a 64-bit FNV-1a hash of the generating parameters.
  static std::string key(std::string_view generator, int n, int k);

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<std::vector<MarkedTree>> load_strata(int n, int k) const;
  void store_strata(int n, int k, const std::vector<MarkedTree>& trees) const;

  std::optional<SparseIntMatrix> load_relations(int n, int k) const;
  void store_relations(int n, int k, const SparseIntMatrix& m) const;

 private:
  std::filesystem::path entry_path(std::string_view generator, int n, int k) const;
  void write_atomically(const std::filesystem::path& target, const std::string& contents) const;

  std::filesystem::path dir_;
};

}  // namespace strata
