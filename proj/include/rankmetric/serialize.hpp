#pragma once

// JSON and CSV forms of contexts, elements, q-polynomials, codes and reports.

#include <string>

#include <json.hpp>

#include "rankmetric/invariants.hpp"

namespace rankmetric {

using Json = nlohmann::ordered_json;

/// {"p", "e", "n", "modulus": F_p digits, constant term first}.
Json context_to_json(const FieldContext& ctx);
/// Rebuilds the context and throws ContextMismatch when the stored modulus
/// differs from the one this build selects.
ContextPtr context_from_json(const Json& j);

Json poly_to_json(const LinearizedPoly& f);
LinearizedPoly poly_from_json(const ContextPtr& ctx, const Json& j);

/// {"ctx", "scalars": "fq"|"fqn", "basis": [poly arrays]}.
Json code_to_json(const RdCode& c);
RdCode code_from_json(const Json& j);

Json mrd_to_json(const MrdResult& r);
Json index_to_json(const IndexResult& r);
Json idealiser_to_json(const IdealiserResult& r);
Json report_to_json(const InvariantReport& r);
Json fixture_to_json(const Fixture& f);
Json table1_row_to_json(const Table1Row& r);
Json fingerprint_to_json(const Fingerprint& f);

/// "rank,count" lines, header included.
std::string rank_distribution_csv(const RankDistribution& d);

}  // namespace rankmetric
