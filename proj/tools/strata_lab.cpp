// strata-lab: command-line driver for the strata workbench.

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "strata/conjecture.hpp"
#include "strata/errors.hpp"
#include "strata/homology.hpp"
#include "strata/json_io.hpp"
#include "strata/psets.hpp"
#include "strata/relations.hpp"
#include "strata/wtilde.hpp"

using namespace strata;

namespace {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kDomain = 2, kResourceBound = 3 };

struct ResourceBound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 0x5eed;
  std::string cache_dir;
  bool no_cache = false;
  int max_n = 8;
  bool exact = false;
};

struct Args {
  int n = 0;
  std::optional<int> k, r, b, min_r;
  std::string space = "homology";
  std::optional<std::size_t> sample;
};

class Driver {
 public:
  explicit Driver(const Globals& g) : g_(g) {}

  Workbench& wb() {
    if (!wb_) {
      WorkbenchOptions opts;
      opts.seed = g_.seed;
      opts.exact_audit = g_.exact;
      if (!g_.no_cache) opts.cache_dir = g_.cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(g_.cache_dir);
      wb_.emplace(std::move(opts));
    }
    return *wb_;
  }

  void bound(int n) const {
    if (n > g_.max_n)
      throw ResourceBound("n = " + std::to_string(n) + " exceeds --max-n " + std::to_string(g_.max_n));
  }

  const std::string& format() const { return g_.format; }

 private:
  const Globals& g_;
  std::optional<Workbench> wb_;
};

int require_k(const Args& a) {
  if (!a.k) throw DomainError("--k is required");
  return *a.k;
}

std::string join(const auto& values, const char* sep = ",") {
  std::ostringstream out;
  bool first = true;
  for (const auto& v : values) {
    if (!first) out << sep;
    out << v;
    first = false;
  }
  return out.str();
}

void print_character(const Character& chi, int k, const std::string& space, std::optional<int> r,
                     const std::string& format) {
  if (format == "json") {
    Json j = to_json(chi, k, space);
    if (r) j["r"] = *r;
    std::cout << j.dump() << '\n';
    return;
  }
  if (format == "csv") std::cout << "cycle_type,value\n";
  for (const auto& [type, v] : chi.values) {
    if (format == "csv")
      std::cout << '"' << format_cycle_type(type) << "\"," << v << '\n';
    else
      std::cout << std::left << std::setw(14) << format_cycle_type(type) << v << '\n';
  }
}

int cmd_enumerate(Driver& d, const Args& a) {
  const int k = require_k(a);
  d.bound(a.n);
  for (const MarkedTree& t : d.wb().strata(a.n, k)) {
    if (a.min_r && filtration_level(t) < *a.min_r) continue;
    if (d.format() == "json")
      std::cout << to_json(t).dump() << '\n';
    else
      std::cout << t.canonical_form() << '\n';
  }
  return kOk;
}

int cmd_betti(Driver& d, const Args& a) {
  d.bound(a.n);
  std::vector<std::size_t> b;
  for (int k = 0; k <= a.n - 3; ++k) b.push_back(betti(d.wb(), a.n, k));
  if (d.format() == "json") {
    std::cout << Json{{"n", a.n}, {"betti", b}}.dump() << '\n';
  } else if (d.format() == "csv") {
    std::cout << "n,k,betti\n";
    for (std::size_t k = 0; k < b.size(); ++k) std::cout << a.n << ',' << k << ',' << b[k] << '\n';
  } else {
    std::cout << join(b) << '\n';
  }
  return kOk;
}

int print_dims(Driver& d, const Args& a, const char* key, const std::vector<std::size_t>& dims, int first) {
  if (d.format() == "json") {
    std::cout << Json{{"n", a.n}, {"k", *a.k}, {key, dims}}.dump() << '\n';
  } else if (d.format() == "csv") {
    std::cout << "n,k," << key[0] << ",dim\n";
    for (std::size_t i = 0; i < dims.size(); ++i)
      std::cout << a.n << ',' << *a.k << ',' << first + static_cast<int>(i) << ',' << dims[i] << '\n';
  } else {
    std::cout << join(dims) << '\n';
  }
  return kOk;
}

int cmd_graded(Driver& d, const Args& a) {
  require_k(a);
  d.bound(a.n);
  return print_dims(d, a, "r", graded_dims(d.wb(), a.n, *a.k).dims, 1);
}

int cmd_inner(Driver& d, const Args& a) {
  require_k(a);
  d.bound(a.n);
  return print_dims(d, a, "b", inner_graded_dims(d.wb(), a.n, *a.k), 0);
}

int cmd_character(Driver& d, const Args& a) {
  const int k = require_k(a);
  Character chi;
  if (a.space == "p1" || a.space == "p2") {
    if (a.n < 3 || k < 0 || k > a.n - 3) throw DomainError("need 0 <= k <= n-3");
    chi = character_pset(a.n, k, a.space == "p1" ? PSet::kP1 : PSet::kP2);
  } else if (a.space == "homology") {
    d.bound(a.n);
    chi = character_homology(d.wb(), a.n, k);
  } else {
    if (!a.r) throw DomainError("--space graded needs --r");
    d.bound(a.n);
    chi = character_graded(d.wb(), a.n, k, *a.r);
  }
  print_character(chi, k, a.space, a.space == "graded" ? a.r : std::nullopt, d.format());
  return kOk;
}

int cmd_conjecture(Driver& d, const Args& a) {
  std::vector<FormulaValue> rows;
  if (a.k) {
    if (*a.k < 0 || *a.k > a.n - 3) throw DomainError("need 0 <= k <= n-3");
    for (int r = 1; r <= std::min(*a.k, a.n - 2 - *a.k); ++r) rows.push_back(q_dim_formula(a.n, *a.k, r));
  } else {
    rows = formula_table(a.n, a.n);
  }
  if (d.format() == "csv") {
    write_csv(std::cout, rows);
  } else if (d.format() == "json") {
    for (const FormulaValue& v : rows)
      std::cout << Json{{"n", v.n}, {"k", v.k}, {"r", v.r}, {"value", v.value.str()}}.dump() << '\n';
  } else {
    for (const FormulaValue& v : rows) std::cout << "k=" << v.k << " r=" << v.r << "  " << v.value << '\n';
  }
  return kOk;
}

int cmd_relations(Driver& d, const Args& a) {
  const int k = require_k(a);
  d.bound(a.n);
  const StrataIndex index(d.wb().strata(a.n, k));
  for (const KMRelation& rel : generate_relations(a.n, k)) std::cout << to_json(rel, index).dump() << '\n';
  return kOk;
}

// Verification targets. Each prints a JSON report and returns whether everything passed.

Json character_diff(const Character& got, const Character& want) {
  Json out = Json::array();
  for (const auto& [type, v] : want.values)
    if (got.at(type) != v) out.push_back({{"cycle_type", format_cycle_type(type)}, {"computed", got.at(type)}, {"expected", v}});
  return out;
}

bool verify_main_theorem(Driver& d, const Args& a, Json& report) {
  const int k = a.k.value_or(2);
  if (k < 1 || k > a.n - 3) throw DomainError("main-theorem: need 1 <= k <= n-3");
  d.bound(a.n);
  const int top = std::min(k, a.n - 2 - k);
  const Character p1 = character_pset(a.n, k, PSet::kP1);
  const Character p2 = character_pset(a.n, k, PSet::kP2);
  Json checks = Json::array();
  bool ok = true;
  auto check = [&](const std::string& name, const Character& got, const Character& want) {
    Json diff = character_diff(got, want);
    ok = ok && diff.empty();
    checks.push_back({{"check", name}, {"pass", diff.empty()}, {"failures", std::move(diff)}});
  };
  check("Q1 = P1", character_graded(d.wb(), a.n, k, 1), p1);
  if (top >= 2) check("Q2 = P2", character_graded(d.wb(), a.n, k, 2), p2);
  if (top <= 2) check("H = P1 + P2", character_homology(d.wb(), a.n, k), p1 + p2);
  report = {{"target", "main-theorem"}, {"n", a.n}, {"k", k}, {"checks", std::move(checks)}};
  return ok;
}

std::vector<int> k_range(const Args& a, int lo, int hi) {
  if (a.k) return {*a.k};
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

bool verify_wtilde(Driver& d, const Args& a, Json& report) {
  d.bound(a.n);
  Json runs = Json::array();
  bool ok = true;
  for (int k : k_range(a, 2, a.n - 4)) {
    const KillReport r = verify_relations_killed(a.n, k);
    ok = ok && r.passed();
    runs.push_back(to_json(r));
  }
  report = {{"target", "wtilde"}, {"n", a.n}, {"runs", std::move(runs)}};
  return ok;
}

bool verify_rewrite_target(Driver& d, const Args& a, Json& report) {
  d.bound(a.n);
  Json runs = Json::array();
  bool ok = true;
  for (int k : k_range(a, 2, a.n - 4)) {
    const RewriteReport r = verify_rewrite(d.wb(), a.n, k, a.sample);
    ok = ok && r.passed();
    runs.push_back(to_json(r));
  }
  report = {{"target", "rewrite"}, {"n", a.n}, {"runs", std::move(runs)}};
  return ok;
}

bool verify_forgetful(Driver& d, const Args& a, Json& report) {
  d.bound(a.n + 1);
  Json runs = Json::array();
  bool ok = true;
  for (int k : k_range(a, 2, a.n - 2)) {
    std::vector<int> bs;
    if (a.b)
      bs = {*a.b};
    else
      for (int b = 0; b <= a.n - k - 3; ++b) bs.push_back(b);
    for (int b : bs) {
      const ForgetfulReport r = verify_forgetful_square(a.n, k, b);
      ok = ok && r.passed();
      runs.push_back(to_json(r));
    }
  }
  report = {{"target", "forgetful"}, {"n", a.n}, {"runs", std::move(runs)}};
  return ok;
}

bool verify_conjecture(Driver& d, const Args& a, Json& report) {
  d.bound(a.n);
  Json failures = Json::array();
  for (int k : k_range(a, 0, a.n - 3)) {
    const std::size_t computed = betti(d.wb(), a.n, k);
    const BigInt predicted = betti_formula(a.n, k);
    if (predicted != computed)
      failures.push_back({{"k", k}, {"computed", computed}, {"formula", predicted.str()}});
    if (k == 0) continue;
    const GradedDims g = graded_dims(d.wb(), a.n, k);
    for (std::size_t i = 0; i < g.dims.size(); ++i) {
      const int r = static_cast<int>(i) + 1;
      const BigInt f = q_dim_formula(a.n, k, r).value;
      if (f != g.dims[i]) failures.push_back({{"k", k}, {"r", r}, {"computed", g.dims[i]}, {"formula", f.str()}});
    }
  }
  const bool ok = failures.empty();
  report = {{"target", "conjecture"}, {"n", a.n}, {"failures", std::move(failures)}};
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary strata, Kontsevich-Manin relations, and S_n-characters of H_*(M0n-bar, Q)"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  if (const char* env = std::getenv("STRATA_CACHE_DIR")) g.cache_dir = env;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--seed", g.seed, "Seed for prime selection");
  app.add_option("--cache-dir", g.cache_dir, "Cache directory (default $STRATA_CACHE_DIR or ~/.cache/strata-lab)");
  app.add_flag("--no-cache", g.no_cache, "Do not read or write the cache");
  app.add_option("--max-n", g.max_n, "Refuse work above this many marks (exit 3)");
  app.add_flag("--exact", g.exact, "Cross-check ranks with fraction-free elimination for n <= 6");

  Args a;
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", a.n, "Number of marks")->required(); };
  auto add_k = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--k", a.k, "Dimension k of the strata");
    if (required) opt->required();
  };

  auto* enumerate = app.add_subcommand("enumerate", "List S_{k,n} as JSON lines");
  add_n(enumerate);
  add_k(enumerate, true);
  enumerate->add_option("--min-r", a.min_r, "Keep only trees with at least this many fat vertices");

  auto* betti_cmd = app.add_subcommand("betti", "Betti numbers h_{2k} for k = 0..n-3");
  add_n(betti_cmd);

  auto* graded = app.add_subcommand("graded", "dim Q^r_{k,n}");
  add_n(graded);
  add_k(graded, true);

  auto* inner = app.add_subcommand("inner", "dim (Q^2_{k,n})^b");
  add_n(inner);
  add_k(inner, true);

  auto* character = app.add_subcommand("character", "S_n-character by cycle type");
  add_n(character);
  add_k(character, true);
  character->add_option("--space", a.space, "homology | graded | p1 | p2")
      ->check(CLI::IsMember({"homology", "graded", "p1", "p2"}));
  character->add_option("--r", a.r, "Filtration level for --space graded");

  auto* conjecture = app.add_subcommand("conjecture", "Conjectural dim Q^r_{k,n}");
  add_n(conjecture);
  add_k(conjecture, false);

  auto* relations = app.add_subcommand("relations", "Kontsevich-Manin relations of S_{k,n} as JSON lines");
  add_n(relations);
  add_k(relations, true);

  auto* verify = app.add_subcommand("verify", "Certify a statement numerically");
  std::string target;
  verify->add_option("target", target, "main-theorem | wtilde | rewrite | forgetful | conjecture")
      ->required()
      ->check(CLI::IsMember({"main-theorem", "wtilde", "rewrite", "forgetful", "conjecture"}));
  add_n(verify);
  add_k(verify, false);
  verify->add_option("--b", a.b, "Inner level (forgetful)");
  verify->add_option("--sample", a.sample, "Random sample size per k (rewrite)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kDomain;
  }

  Driver d(g);
  try {
    if (*enumerate) return cmd_enumerate(d, a);
    if (*betti_cmd) return cmd_betti(d, a);
    if (*graded) return cmd_graded(d, a);
    if (*inner) return cmd_inner(d, a);
    if (*character) return cmd_character(d, a);
    if (*conjecture) return cmd_conjecture(d, a);
    if (*relations) return cmd_relations(d, a);

    Json report;
    bool ok = false;
    if (target == "main-theorem") ok = verify_main_theorem(d, a, report);
    if (target == "wtilde") ok = verify_wtilde(d, a, report);
    if (target == "rewrite") ok = verify_rewrite_target(d, a, report);
    if (target == "forgetful") ok = verify_forgetful(d, a, report);
    if (target == "conjecture") ok = verify_conjecture(d, a, report);
    report["pass"] = ok;
    std::cout << report.dump() << '\n';
    return ok ? kOk : kVerificationFailed;
  } catch (const ResourceBound& e) {
    std::cout << Json{{"error", "resource bound"}, {"detail", e.what()}}.dump() << '\n';
    return kResourceBound;
  } catch (const DomainError& e) {
    std::cerr << "strata-lab: " << e.what() << '\n';
    return kDomain;
  } catch (const CertificationError& e) {
    std::cerr << "strata-lab: certification failed: " << e.what() << '\n';
    return kVerificationFailed;
  }
}
