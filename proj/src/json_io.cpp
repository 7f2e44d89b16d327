#include "strata/json_io.hpp"

#include "strata/errors.hpp"

namespace strata {

namespace {

MarkSet set_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("expected an array of marks");
  MarkSet s;
  for (const Json& m : j) {
    if (!m.is_number_integer()) throw DomainError("marks must be integers");
    const int v = m.get<int>();
    if (v < 1 || v > kMaxMarks) throw DomainError("mark " + std::to_string(v) + " out of range");
    s |= MarkSet::single(v);
  }
  return s;
}

Json pvector_to_json(const PVector& v) {
  Json out = Json::array();
  for (const auto& [p, h] : v.terms()) out.push_back({{"pair", to_json(p)}, {"coeff", format_halves(h)}});
  return out;
}

}  // namespace

Json to_json(MarkSet s) { return s.members(); }

Json to_json(const MarkedTree& t) {
  Json splits = Json::array();
  for (Split s : t.splits()) splits.push_back(to_json(s));
  return {{"n", t.n()}, {"splits", std::move(splits)}};
}

MarkedTree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("splits") || !j["n"].is_number_integer() ||
      !j["splits"].is_array())
    throw DomainError("tree JSON must look like {\"n\": 6, \"splits\": [[3,4]]}");
  std::vector<MarkSet> splits;
  for (const Json& s : j["splits"]) splits.push_back(set_from_json(s));
  return MarkedTree(j["n"].get<int>(), std::move(splits));
}

Json to_json(const PairLabel& p) {
  return {{"P1", to_json(p.p1)}, {"a1", p.a1}, {"P2", to_json(p.p2)}, {"a2", p.a2}};
}

PairLabel pair_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("pair JSON must be an object");
  try {
    return PairLabel::normalized(set_from_json(j.at("P1")), j.at("a1").get<int>(), set_from_json(j.at("P2")),
                                 j.at("a2").get<int>());
  } catch (const Json::exception& e) {
    throw DomainError(std::string("pair JSON: ") + e.what());
  }
}

Json to_json(const Character& chi, int k, std::string_view space) {
  Json values = Json::object();
  for (const auto& [type, v] : chi.values) values[format_cycle_type(type)] = v;
  return {{"n", chi.n}, {"k", k}, {"space", space}, {"values", std::move(values)}};
}

Json to_json(const KMRelation& rel, const StrataIndex& index) {
  Json terms = Json::array();
  for (const auto& [t, c] : rel.terms) terms.push_back({index.id(t), c});
  return {{"sigma", to_json(rel.sigma)},
          {"flags", {to_json(rel.a), to_json(rel.b), to_json(rel.c), to_json(rel.d)}},
          {"pairing", rel.pairing == Pairing::kAC ? "AC" : "AD"},
          {"terms", std::move(terms)}};
}

Json to_json(const RewriteMove& move) {
  Json removed = Json::array(), added = Json::array();
  for (Split s : move.removed) removed.push_back(to_json(s));
  for (Split s : move.added) added.push_back(to_json(s));
  Json out;
  if (move.kind == RewriteMove::Kind::kTrivalentRearrange) {
    out = {{"kind", "rearrange"}, {"region", to_json(move.region)}};
  } else {
    out = {{"kind", "km-swap"}, {"A", to_json(move.a)}, {"B", to_json(move.b)}, {"C", to_json(move.c)},
           {"e", to_json(move.e)}};
  }
  out["removed"] = std::move(removed);
  out["added"] = std::move(added);
  return out;
}

Json to_json(const KillReport& report) {
  Json failures = Json::array();
  for (const RelationFailure& f : report.failures) {
    Json flags = {to_json(f.relation.a), to_json(f.relation.b), to_json(f.relation.c), to_json(f.relation.d)};
    failures.push_back({{"sigma", to_json(f.relation.sigma)},
                        {"flags", std::move(flags)},
                        {"pairing", f.relation.pairing == Pairing::kAC ? "AC" : "AD"},
                        {"residual", pvector_to_json(f.residual)}});
  }
  return {{"n", report.n},
          {"k", report.k},
          {"relations", report.relations_checked},
          {"max_residual", format_halves(report.max_residual_halves)},
          {"failures", std::move(failures)}};
}

Json to_json(const ForgetfulReport& report) {
  Json failures = Json::array();
  for (const ForgetfulMismatch& m : report.mismatches)
    failures.push_back({{"sigma", to_json(m.tree)},
                        {"via_trees", m.via_trees ? to_json(*m.via_trees) : Json()},
                        {"via_pairs", m.via_pairs ? to_json(*m.via_pairs) : Json()},
                        {"reason", m.reason}});
  return {{"n", report.n},
          {"k", report.k},
          {"b", report.b},
          {"trees", report.trees_checked},
          {"nonzero", report.nonzero_paths},
          {"failures", std::move(failures)}};
}

Json to_json(const RewriteReport& report) {
  return {{"n", report.n},
          {"k", report.k},
          {"trees", report.trees_checked},
          {"moves", report.moves_checked},
          {"failures", report.failures}};
}

}  // namespace strata
