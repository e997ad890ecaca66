#pragma once

#include <json.hpp>

#include "octo/census.hpp"
#include "octo/orbit.hpp"
#include "octo/solvers.hpp"

namespace octo {

using Json = nlohmann::json;

/// Ambient field used to interpret bare integers in input JSON.
struct FieldContext {
    bool complex_backend = false;
    std::int64_t p = 7;
    int m = 1;

    FieldElement from_int(std::int64_t v) const;
};

Json field_to_json(const FieldElement& e);
FieldElement field_from_json(const Json& j, const FieldContext& ctx);

Json octonion_to_json(const Octonion& a);
Octonion octonion_from_json(const Json& j, const FieldContext& ctx);

Json certificate_to_json(const SolveCertificate& c);
Json witness_to_json(const ObstructionWitness& w);
Json verdict_to_json(const Verdict& v);
Json census_to_json(const CensusReport& r);
std::string census_to_table(const CensusReport& r);

/// Instance JSON: either {"A1":…,"A2":…} or {"family":…,"params":{…}},
/// plus "k1", "k2", "A".
ProblemInstance instance_from_json(const Json& j, const FieldContext& ctx);

OrbitRepresentative rep_from_json(const Json& j, const FieldContext& ctx);

}  // namespace octo
