#include "strata/cache.hpp"

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "strata/errors.hpp"

namespace strata {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kStrataGenerator = "strata";
constexpr std::string_view kRelationsGenerator = "km-relations";

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::default_dir() {
  if (const char* env = std::getenv("STRATA_CACHE_DIR"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "strata-lab";
  return fs::temp_directory_path() / "strata-lab";
}

std::string Cache::key(std::string_view generator, int n, int k) {
  std::ostringstream params;
  params << kCacheVersion << '/' << generator << '/' << n << '/' << k;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(params.str())));
  return buf;
}

fs::path Cache::entry_path(std::string_view generator, int n, int k) const {
  return dir_ / (key(generator, n, k) + "." + std::string(generator));
}

void Cache::write_atomically(const fs::path& target, const std::string& contents) const {
  static std::atomic<unsigned> counter{0};
  fs::create_directories(dir_);
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
           << counter++;
  const fs::path tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cache: cannot write " + tmp.string());
    out << contents;
    if (!out.flush()) throw std::runtime_error("cache: short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::optional<std::vector<MarkedTree>> Cache::load_strata(int n, int k) const {
  const auto text = read_file(entry_path(kStrataGenerator, n, k));
  if (!text) return std::nullopt;
  std::istringstream in(*text);
  std::string magic, key_in;
  std::size_t count = 0;
  if (!(in >> magic >> key_in >> count) || magic != "strata-lab-strata" || key_in != key(kStrataGenerator, n, k))
    return std::nullopt;
  std::vector<MarkedTree> trees;
  trees.reserve(count);
  try {
    for (std::size_t i = 0; i < count; ++i) {
      std::size_t m = 0;
      if (!(in >> m)) return std::nullopt;
      std::vector<MarkSet> splits(m);
      for (auto& s : splits) {
        std::uint32_t bits = 0;
        if (!(in >> bits)) return std::nullopt;
        s = MarkSet(bits);
      }
      trees.emplace_back(n, std::move(splits));
      if (trees.back().dimension() != k) return std::nullopt;
    }
  } catch (const DomainError&) {
    return std::nullopt;
  }
  return trees;
}

void Cache::store_strata(int n, int k, const std::vector<MarkedTree>& trees) const {
  std::ostringstream out;
  out << "strata-lab-strata " << key(kStrataGenerator, n, k) << ' ' << trees.size() << '\n';
  for (const MarkedTree& t : trees) {
    out << t.splits().size();
    for (Split s : t.splits()) out << ' ' << s.bits();
    out << '\n';
  }
  write_atomically(entry_path(kStrataGenerator, n, k), out.str());
}

std::optional<SparseIntMatrix> Cache::load_relations(int n, int k) const {
  const auto text = read_file(entry_path(kRelationsGenerator, n, k));
  if (!text) return std::nullopt;
  std::istringstream in(*text);
  std::string magic, key_in;
  std::size_t n_rows = 0, n_cols = 0, nnz = 0;
  if (!(in >> magic >> key_in >> n_rows >> n_cols >> nnz) || magic != "strata-lab-matrix" ||
      key_in != key(kRelationsGenerator, n, k))
    return std::nullopt;
  std::vector<SparseIntVector> rows(n_rows);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::size_t r = 0;
    std::uint32_t c = 0;
    std::int64_t v = 0;
    if (!(in >> r >> c >> v) || r >= n_rows || c >= n_cols) return std::nullopt;
    rows[r].emplace_back(c, v);
  }
  SparseIntMatrix m(n_cols);
  for (auto& row : rows) m.add_row(std::move(row));
  return m;
}

void Cache::store_relations(int n, int k, const SparseIntMatrix& m) const {
  std::ostringstream out;
  out << "strata-lab-matrix " << key(kRelationsGenerator, n, k) << ' ' << m.n_rows() << ' ' << m.n_cols() << ' '
      << m.nonzeros() << '\n';
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (const auto& [c, v] : m.rows()[r]) out << r << ' ' << c << ' ' << v << '\n';
  write_atomically(entry_path(kRelationsGenerator, n, k), out.str());
}

}  // namespace strata
