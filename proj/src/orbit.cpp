#include "octo/orbit.hpp"

#include <algorithm>

namespace octo {

const char* family_name(Family f) {
    switch (f) {
        case Family::DD: return "DD";
        case Family::EK1: return "EK1";
        case Family::FK: return "FK";
        case Family::FN: return "FN";
        case Family::FP: return "FP";
        case Family::K1E: return "K1E";
        case Family::K1F: return "K1F";
        case Family::K1L1: return "K1L1";
        case Family::K1LT: return "K1LT";
        case Family::K1M: return "K1M";
        default: return "K1M1T";
    }
}

std::optional<Family> family_from_name(const std::string& name) {
    static const std::vector<std::pair<std::string, Family>> table = {
        {"DD", Family::DD},     {"EK1", Family::EK1},   {"FK", Family::FK},
        {"FN", Family::FN},     {"FP", Family::FP},     {"K1E", Family::K1E},
        {"K1F", Family::K1F},   {"K1L1", Family::K1L1}, {"K1LT", Family::K1LT},
        {"K1M", Family::K1M},   {"K1M1T", Family::K1M1T}};
    for (const auto& [n, f] : table)
        if (n == name) return f;
    return std::nullopt;
}

std::vector<std::string> family_param_names(Family f) {
    switch (f) {
        case Family::DD: return {"a1", "a8", "b1", "b8"};
        case Family::EK1: return {"a1", "b1"};
        case Family::FK: return {"a1", "a8", "b1", "b8"};
        case Family::FN: return {"a1", "a8", "b1", "b5", "b8"};
        case Family::FP: return {"a1", "a8", "b1", "b8"};
        case Family::K1E: return {"a1", "b1"};
        case Family::K1F: return {"a1", "b1", "b8"};
        case Family::K1L1: return {"a1", "b1", "b2"};
        case Family::K1LT: return {"a1", "b1", "b5", "b8"};
        case Family::K1M: return {"a1", "b1", "b8"};
        default: return {"a1", "b1"};  // K1M1T
    }
}

const FieldElement& OrbitRepresentative::param(const std::string& name) const {
    for (const auto& [n, v] : params)
        if (n == name) return v;
    throw Error("representative has no parameter '" + name + "'");
}

bool OrbitRepresentative::has_param(const std::string& name) const {
    for (const auto& [n, v] : params)
        if (n == name) return true;
    return false;
}

OrbitRepresentative OrbitRepresentative::make(
    Family f, std::vector<std::pair<std::string, FieldElement>> params) {
    OrbitRepresentative rep{f, std::move(params)};
    auto names = family_param_names(f);
    if (rep.params.size() != names.size())
        throw NotARepresentative("family " + std::string(family_name(f)) + " expects " +
                                 std::to_string(names.size()) + " parameters");
    for (size_t i = 0; i < names.size(); ++i)
        if (rep.params[i].first != names[i])
            throw NotARepresentative("parameter " + std::to_string(i) + " of " +
                                     family_name(f) + " must be '" + names[i] + "'");
    rep.check_constraints();
    return rep;
}

void OrbitRepresentative::check_constraints() const {
    auto nonzero = [&](const char* n) {
        if (param(n).is_zero())
            throw NotARepresentative(std::string(family_name(family)) + " requires " + n +
                                     " != 0");
    };
    auto distinct = [&](const char* n1, const char* n2) {
        if (param(n1) == param(n2))
            throw NotARepresentative(std::string(family_name(family)) + " requires " + n1 +
                                     " != " + n2);
    };
    switch (family) {
        case Family::FK:
        case Family::FP: distinct("a1", "a8"); break;
        case Family::FN:
            distinct("a1", "a8");
            nonzero("b5");
            break;
        case Family::K1F: distinct("b1", "b8"); break;
        case Family::K1L1: nonzero("b2"); break;
        case Family::K1LT: nonzero("b5"); break;
        default: break;
    }
    auto [A1, A2] = realize();
    if (A1.is_zero() || A2.is_zero())
        throw NotARepresentative("coefficients must both be nonzero");
}

std::pair<Octonion, Octonion> OrbitRepresentative::realize() const {
    const FieldElement& a1 = param("a1");
    const FieldElement zero = a1.zero_like();
    const FieldElement one = a1.one_like();
    const Vec3 z3 = Vec3::zero(zero);
    const Vec3 e1 = Vec3::unit(one, 1);
    const Vec3 e2 = Vec3::unit(one, 2);
    auto diag = [&](const FieldElement& u, const FieldElement& v) { return Octonion::diag(u, v); };
    auto k1shape = [&](const FieldElement& u) { return Octonion(u, e1, z3, u); };

    switch (family) {
        case Family::DD:
            return {diag(a1, param("a8")), diag(param("b1"), param("b8"))};
        case Family::EK1:
            return {diag(a1, a1), Octonion(param("b1"), e1, z3, param("b1"))};
        case Family::FK:
            return {diag(a1, param("a8")), Octonion(param("b1"), e1, z3, param("b8"))};
        case Family::FN:
            return {diag(a1, param("a8")),
                    Octonion(param("b1"), e1, Vec3(param("b5"), zero, zero), param("b8"))};
        case Family::FP:
            return {diag(a1, param("a8")), Octonion(param("b1"), e1, e2, param("b8"))};
        case Family::K1E:
            return {k1shape(a1), diag(param("b1"), param("b1"))};
        case Family::K1F:
            return {k1shape(a1), diag(param("b1"), param("b8"))};
        case Family::K1L1:
            return {k1shape(a1),
                    Octonion(param("b1"), Vec3(param("b2"), zero, zero), z3, param("b1"))};
        case Family::K1LT:
            return {k1shape(a1),
                    Octonion(param("b1"), z3, Vec3(param("b5"), zero, zero), param("b8"))};
        case Family::K1M:
            return {k1shape(a1), Octonion(param("b1"), e2, z3, param("b8"))};
        default:  // K1M1T
            return {k1shape(a1), Octonion(param("b1"), z3, e2, param("b1"))};
    }
}

namespace {

bool is_diag(const Octonion& A) { return A.x().is_zero() && A.y().is_zero(); }

// (c, e1; 0, c)
bool is_k1_shape(const Octonion& A, FieldElement* scalar) {
    if (!A.y().is_zero()) return false;
    if (A.eta() != A.zeta()) return false;
    const FieldElement one = A.eta().one_like();
    if (!(A.x()[0] == one) || !A.x()[1].is_zero() || !A.x()[2].is_zero()) return false;
    *scalar = A.eta();
    return true;
}

bool vec_is(const Vec3& v, bool e1_slot, const FieldElement* val1, bool zero2, bool zero3) {
    (void)e1_slot;
    if (val1 && !(v[0] == *val1)) return false;
    if (zero2 && !v[1].is_zero()) return false;
    if (zero3 && !v[2].is_zero()) return false;
    return true;
}

}  // namespace

std::optional<OrbitRepresentative> match_representative(const Octonion& A1, const Octonion& A2) {
    if (A1.is_zero() || A2.is_zero()) return std::nullopt;
    const FieldElement one = A1.eta().one_like();

    auto P = [](std::string n, FieldElement v) { return std::make_pair(std::move(n), std::move(v)); };
    auto try_make = [](Family f, std::vector<std::pair<std::string, FieldElement>> ps)
        -> std::optional<OrbitRepresentative> {
        try {
            return OrbitRepresentative::make(f, std::move(ps));
        } catch (const NotARepresentative&) {
            return std::nullopt;
        }
    };

    FieldElement k1scalar;
    const bool a1_diag = is_diag(A1);
    const bool a1_k1 = is_k1_shape(A1, &k1scalar);

    if (a1_diag) {
        // DD
        if (is_diag(A2))
            return try_make(Family::DD, {P("a1", A1.eta()), P("a8", A1.zeta()),
                                         P("b1", A2.eta()), P("b8", A2.zeta())});
        // EK1 / FK / FN / FP all have x-slot exactly e1
        if (!(A2.x()[0] == one) || !A2.x()[1].is_zero() || !A2.x()[2].is_zero()) return std::nullopt;
        if (A2.y().is_zero()) {
            if (A1.eta() == A1.zeta() && A2.eta() == A2.zeta())
                return try_make(Family::EK1, {P("a1", A1.eta()), P("b1", A2.eta())});
            return try_make(Family::FK, {P("a1", A1.eta()), P("a8", A1.zeta()),
                                         P("b1", A2.eta()), P("b8", A2.zeta())});
        }
        if (A2.y()[1].is_zero() && A2.y()[2].is_zero())
            return try_make(Family::FN, {P("a1", A1.eta()), P("a8", A1.zeta()), P("b1", A2.eta()),
                                         P("b5", A2.y()[0]), P("b8", A2.zeta())});
        if (A2.y()[0].is_zero() && A2.y()[1] == one && A2.y()[2].is_zero())
            return try_make(Family::FP, {P("a1", A1.eta()), P("a8", A1.zeta()),
                                         P("b1", A2.eta()), P("b8", A2.zeta())});
        return std::nullopt;
    }

    if (a1_k1) {
        if (is_diag(A2)) {
            if (A2.eta() == A2.zeta())
                return try_make(Family::K1E, {P("a1", k1scalar), P("b1", A2.eta())});
            return try_make(Family::K1F,
                            {P("a1", k1scalar), P("b1", A2.eta()), P("b8", A2.zeta())});
        }
        if (A2.y().is_zero()) {
            // x-slot (b2, 0, 0) or (0, 1, 0)
            if (A2.x()[1].is_zero() && A2.x()[2].is_zero() && A2.eta() == A2.zeta())
                return try_make(Family::K1L1, {P("a1", k1scalar), P("b1", A2.eta()),
                                               P("b2", A2.x()[0])});
            if (A2.x()[0].is_zero() && A2.x()[1] == one && A2.x()[2].is_zero())
                return try_make(Family::K1M, {P("a1", k1scalar), P("b1", A2.eta()),
                                              P("b8", A2.zeta())});
            return std::nullopt;
        }
        if (A2.x().is_zero()) {
            if (vec_is(A2.y(), true, nullptr, true, true))
                return try_make(Family::K1LT, {P("a1", k1scalar), P("b1", A2.eta()),
                                               P("b5", A2.y()[0]), P("b8", A2.zeta())});
            if (A2.y()[0].is_zero() && A2.y()[1] == one && A2.y()[2].is_zero() &&
                A2.eta() == A2.zeta())
                return try_make(Family::K1M1T, {P("a1", k1scalar), P("b1", A2.eta())});
            return std::nullopt;
        }
        return std::nullopt;
    }

    return std::nullopt;
}

}  // namespace octo
