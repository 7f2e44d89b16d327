#pragma once

#include <json.hpp>
#include <string_view>

#include "strata/character.hpp"
#include "strata/psets.hpp"
#include "strata/relations.hpp"
#include "strata/trees.hpp"
#include "strata/wtilde.hpp"

namespace strata {

using Json = nlohmann::ordered_json;

Json to_json(MarkSet s);
Json to_json(const MarkedTree& t);
/// Throws DomainError on malformed input or an invalid split family.
MarkedTree tree_from_json(const Json& j);

Json to_json(const PairLabel& p);
PairLabel pair_from_json(const Json& j);

Json to_json(const Character& chi, int k, std::string_view space);

/// {"sigma", "flags", "pairing", "terms": [[id, coeff], ...]} with ids from `index`.
Json to_json(const KMRelation& rel, const StrataIndex& index);

Json to_json(const RewriteMove& move);
Json to_json(const KillReport& report);
Json to_json(const ForgetfulReport& report);
Json to_json(const RewriteReport& report);

}  // namespace strata
