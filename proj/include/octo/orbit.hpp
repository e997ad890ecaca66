#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "octo/octonion.hpp"

namespace octo {

/// The eleven coefficient-pair families, tagged as in the classification of
/// simultaneous orbit representatives.
enum class Family { DD, EK1, FK, FN, FP, K1E, K1F, K1L1, K1LT, K1M, K1M1T };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// A representative pair (A1, A2): a family tag plus its free parameters.
/// Parameter names are the catalog's (a1, a8, b1, b2, b5, b6, b8); which of
/// them are present depends on the family.
struct OrbitRepresentative {
    Family family;
    std::vector<std::pair<std::string, FieldElement>> params;

    const FieldElement& param(const std::string& name) const;
    bool has_param(const std::string& name) const;

    /// Build the concrete pair (A1, A2).
    std::pair<Octonion, Octonion> realize() const;

    /// Validate the family's parameter constraints (throws NotARepresentative).
    void check_constraints() const;

    static OrbitRepresentative make(Family f,
                                    std::vector<std::pair<std::string, FieldElement>> params);
};

/// Syntactic matcher: recognizes a raw pair as a catalog representative and
/// extracts its parameters. No orbit reduction is attempted; pairs that are
/// merely equivalent to a representative are not recognized.
std::optional<OrbitRepresentative> match_representative(const Octonion& A1, const Octonion& A2);

/// List of parameter names a family carries, in canonical order.
std::vector<std::string> family_param_names(Family f);

}  // namespace octo
