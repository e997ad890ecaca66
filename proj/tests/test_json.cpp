#include <gtest/gtest.h>

#include <random>

#include "octo/json_io.hpp"
#include "test_util.hpp"

using namespace octo;
using testutil::rand_elem;
using testutil::rand_oct;

TEST(JsonIO, FieldElementRoundTrip) {
    std::mt19937_64 rng(71);
    FieldContext ctx;
    for (int i = 0; i < 500; ++i) {
        std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7}[rng() % 4];
        int m = 1 + static_cast<int>(rng() % 3);
        auto a = rand_elem(rng, p, m);
        auto back = field_from_json(field_to_json(a), ctx);
        ASSERT_TRUE(a == back);
        ASSERT_EQ(field_to_json(a).dump(), field_to_json(back).dump());
    }
    auto z = FieldElement::complex_num(1.5, -0.25);
    EXPECT_TRUE(field_from_json(field_to_json(z), ctx) == z);
}

TEST(JsonIO, OctonionRoundTrip) {
    std::mt19937_64 rng(72);
    FieldContext ctx;
    for (int i = 0; i < 300; ++i) {
        auto a = rand_oct(rng, 7, 1);
        auto back = octonion_from_json(octonion_to_json(a), ctx);
        ASSERT_TRUE(a == back);
    }
}

TEST(JsonIO, IntegerShortcutsUseContext) {
    FieldContext ctx;
    ctx.p = 5;
    ctx.m = 1;
    auto a = field_from_json(Json(7), ctx);
    EXPECT_EQ(a.characteristic(), 5);
    EXPECT_EQ(a.canonical_index(), 2u);
    Json j = {{"eta", 1}, {"x", {1, 0, 0}}, {"y", {0, 0, 0}}, {"zeta", 4}};
    auto o = octonion_from_json(j, ctx);
    EXPECT_TRUE(o.zeta() == FieldElement::integer(5, 4));
}

TEST(JsonIO, InstanceParsing) {
    FieldContext ctx;
    Json inst = {
        {"family", "DD"},
        {"params", {{"a1", 1}, {"a8", 2}, {"b1", 3}, {"b8", 4}}},
        {"k1", 2},
        {"k2", 3},
        {"A", {{"eta", 1}, {"x", {0, 0, 0}}, {"y", {0, 0, 0}}, {"zeta", 6}}},
    };
    auto pi = instance_from_json(inst, ctx);
    EXPECT_EQ(pi.k2, 3);
    EXPECT_TRUE(pi.A1 == Octonion::diag(FieldElement::integer(7, 1), FieldElement::integer(7, 2)));
    EXPECT_THROW(instance_from_json(Json{{"k1", 2}}, ctx), ParseError);
    Json bad = inst;
    bad["params"].erase("b8");
    EXPECT_THROW(instance_from_json(bad, ctx), ParseError);
}

TEST(JsonIO, RawPairInstance) {
    FieldContext ctx;
    Json inst = {
        {"A1", {{"eta", 1}, {"x", {0, 0, 0}}, {"y", {0, 0, 0}}, {"zeta", 0}}},
        {"A2", {{"eta", 0}, {"x", {0, 0, 0}}, {"y", {0, 0, 0}}, {"zeta", 1}}},
        {"k1", 2},
        {"k2", 2},
        {"A", {{"eta", 3}, {"x", {1, 2, 0}}, {"y", {0, 4, 5}}, {"zeta", 6}}},
    };
    auto pi = instance_from_json(inst, ctx);
    auto res = solve(pi);
    ASSERT_TRUE(std::holds_alternative<SolveCertificate>(res));
    EXPECT_TRUE(std::get<SolveCertificate>(res).verified);
}

TEST(JsonIO, CertificateSerializationStable) {
    FieldContext ctx;
    auto one = FieldElement::integer(7, 1);
    auto inst = ProblemInstance{Octonion::unit(one), Octonion::unit(one), 2, 2,
                                Octonion::diag(FieldElement::integer(7, 5), one.zero_like())};
    auto c1 = solve_invertible(inst);
    auto c2 = solve_invertible(inst);
    EXPECT_EQ(certificate_to_json(c1).dump(), certificate_to_json(c2).dump());
    auto j = certificate_to_json(c1);
    EXPECT_TRUE(j.at("verified").get<bool>());
    // emitted octonions parse back to the same values
    EXPECT_TRUE(octonion_from_json(j.at("X"), ctx) == c1.X);
}

TEST(JsonIO, WitnessSerialization) {
    auto one = FieldElement::integer(2, 1);
    auto zero = one.zero_like();
    Octonion E(zero, Vec3::unit(one, 1), Vec3::zero(zero), zero);
    auto res = solve_noninvertible(
        ProblemInstance{E, E, 2, 2, Octonion::diag(zero, one)});
    ASSERT_TRUE(std::holds_alternative<ObstructionWitness>(res));
    Json j = witness_to_json(std::get<ObstructionWitness>(res));
    EXPECT_EQ(j.at("family").get<int>(), 5);
    EXPECT_EQ(j.at("mask").size(), 8u);
}
