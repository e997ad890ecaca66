#include "octo/json_io.hpp"

#include <iomanip>
#include <sstream>

namespace octo {

FieldElement FieldContext::from_int(std::int64_t v) const {
    if (complex_backend) return FieldElement::complex_num(static_cast<double>(v), 0.0);
    return FieldElement::finite(p, m, {v});
}

Json field_to_json(const FieldElement& e) {
    if (e.is_complex()) return Json{{"re", e.value().real()}, {"im", e.value().imag()}};
    Json c = Json::array();
    for (int i = 0; i < e.degree(); ++i) c.push_back(e.coeff(i));
    return Json{{"p", e.characteristic()}, {"m", e.degree()}, {"c", c}};
}

FieldElement field_from_json(const Json& j, const FieldContext& ctx) {
    if (j.is_number_integer()) return ctx.from_int(j.get<std::int64_t>());
    if (j.is_number_float()) return FieldElement::complex_num(j.get<double>(), 0.0);
    if (!j.is_object()) throw ParseError("field element must be a number or an object");
    if (j.contains("re") || j.contains("im"))
        return FieldElement::complex_num(j.value("re", 0.0), j.value("im", 0.0));
    if (!j.contains("p") || !j.contains("m") || !j.contains("c"))
        throw ParseError("finite field element needs keys p, m, c");
    std::vector<std::int64_t> c = j.at("c").get<std::vector<std::int64_t>>();
    return FieldElement::finite(j.at("p").get<std::int64_t>(), j.at("m").get<int>(),
                                std::move(c));
}

Json octonion_to_json(const Octonion& a) {
    auto vec = [&](const Vec3& v) {
        return Json::array({field_to_json(v[0]), field_to_json(v[1]), field_to_json(v[2])});
    };
    return Json{{"eta", field_to_json(a.eta())},
                {"x", vec(a.x())},
                {"y", vec(a.y())},
                {"zeta", field_to_json(a.zeta())}};
}

Octonion octonion_from_json(const Json& j, const FieldContext& ctx) {
    if (!j.is_object()) throw ParseError("octonion must be an object");
    for (const char* key : {"eta", "x", "y", "zeta"})
        if (!j.contains(key)) throw ParseError(std::string("octonion needs key ") + key);
    auto vec = [&](const Json& v) {
        if (!v.is_array() || v.size() != 3)
            throw ParseError("octonion vector slots must be arrays of three elements");
        return Vec3(field_from_json(v[0], ctx), field_from_json(v[1], ctx),
                    field_from_json(v[2], ctx));
    };
    return Octonion(field_from_json(j.at("eta"), ctx), vec(j.at("x")), vec(j.at("y")),
                    field_from_json(j.at("zeta"), ctx));
}

Json certificate_to_json(const SolveCertificate& c) {
    Json trace = Json::array();
    for (const auto& t : c.trace) trace.push_back(Json::array({t.name, field_to_json(t.value)}));
    return Json{{"X", octonion_to_json(c.X)},
                {"Y", octonion_to_json(c.Y)},
                {"trace", trace},
                {"degree", c.max_tower_degree},
                {"verified", c.verified}};
}

Json witness_to_json(const ObstructionWitness& w) {
    Json mask = Json::array();
    for (const auto& s : w.mask.render()) mask.push_back(s);
    return Json{{"family", w.family}, {"mask", mask}, {"violated", w.violated}};
}

Json verdict_to_json(const Verdict& v) {
    Json out{{"surjective", v.surjective}, {"matched_swapped", v.matched_swapped}};
    if (!v.surjective) {
        out["family"] = v.family;
        Json mask = Json::array();
        for (const auto& s : v.mask->render()) mask.push_back(s);
        out["mask"] = mask;
    }
    return out;
}

Json census_to_json(const CensusReport& r) {
    Json mask = Json::array();
    for (const auto& s : r.observed_mask) mask.push_back(s);
    Json samples = Json::array();
    for (const auto& a : r.non_image_samples) samples.push_back(octonion_to_json(a));
    return Json{{"q", r.q},
                {"k1", r.k1},
                {"k2", r.k2},
                {"pair", r.pair_desc},
                {"image_size", r.image_size},
                {"total", r.total},
                {"proper_subset", r.proper_subset},
                {"mask", mask},
                {"elapsed_seconds", r.elapsed_seconds},
                {"non_image_samples", samples}};
}

std::string census_to_table(const CensusReport& r) {
    std::ostringstream os;
    os << std::left;
    os << std::setw(14) << "q" << r.q << "\n";
    os << std::setw(14) << "k1,k2" << r.k1 << "," << r.k2 << "\n";
    os << std::setw(14) << "pair" << r.pair_desc << "\n";
    os << std::setw(14) << "image" << r.image_size << " / " << r.total
       << (r.proper_subset ? "  (proper subset)" : "  (full)") << "\n";
    os << std::setw(14) << "mask";
    for (int i = 0; i < 8; ++i) os << kSlotNames[i] << "=" << r.observed_mask[i] << " ";
    os << "\n";
    os << std::setw(14) << "elapsed" << std::fixed << std::setprecision(3) << r.elapsed_seconds
       << "s\n";
    return os.str();
}

OrbitRepresentative rep_from_json(const Json& j, const FieldContext& ctx) {
    if (!j.contains("family")) throw ParseError("representative needs a family tag");
    auto fam = family_from_name(j.at("family").get<std::string>());
    if (!fam) throw ParseError("unknown family tag " + j.at("family").dump());
    if (!j.contains("params") || !j.at("params").is_object())
        throw ParseError("representative needs a params object");
    std::vector<std::pair<std::string, FieldElement>> params;
    for (const auto& name : family_param_names(*fam)) {
        if (!j.at("params").contains(name))
            throw ParseError("family " + std::string(family_name(*fam)) +
                             " needs parameter " + name);
        params.emplace_back(name, field_from_json(j.at("params").at(name), ctx));
    }
    return OrbitRepresentative::make(*fam, std::move(params));
}

ProblemInstance instance_from_json(const Json& j, const FieldContext& ctx) {
    if (!j.is_object()) throw ParseError("instance must be an object");
    std::int64_t k1 = j.value("k1", std::int64_t{2});
    std::int64_t k2 = j.value("k2", std::int64_t{2});
    if (!j.contains("A")) throw ParseError("instance needs a target A");
    Octonion target = octonion_from_json(j.at("A"), ctx);
    if (j.contains("family")) {
        OrbitRepresentative rep = rep_from_json(j, ctx);
        return ProblemInstance::from_rep(rep, k1, k2, std::move(target));
    }
    if (!j.contains("A1") || !j.contains("A2"))
        throw ParseError("instance needs either a family or raw A1, A2");
    return ProblemInstance{octonion_from_json(j.at("A1"), ctx),
                           octonion_from_json(j.at("A2"), ctx), k1, k2, std::move(target)};
}

}  // namespace octo
