#include <gtest/gtest.h>

#include <random>

#include "octo/orbit.hpp"
#include "test_util.hpp"

using namespace octo;
using testutil::rand_elem;

namespace {

OrbitRepresentative random_rep(std::mt19937_64& rng, Family f, std::int64_t p) {
    while (true) {
        std::vector<std::pair<std::string, FieldElement>> params;
        for (const auto& name : family_param_names(f))
            params.emplace_back(name, rand_elem(rng, p, 1));
        try {
            return OrbitRepresentative::make(f, std::move(params));
        } catch (const NotARepresentative&) {
        }
    }
}

}  // namespace

TEST(Orbit, RealizeMatchRoundTrip) {
    std::mt19937_64 rng(41);
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int fi = 0; fi < 11; ++fi) {
            Family f = static_cast<Family>(fi);
            for (int trial = 0; trial < 20; ++trial) {
                auto rep = random_rep(rng, f, p);
                auto [A1, A2] = rep.realize();
                auto back = match_representative(A1, A2);
                ASSERT_TRUE(back.has_value()) << family_name(f) << " p=" << p;
                auto [B1, B2] = back->realize();
                ASSERT_TRUE(A1 == B1 && A2 == B2);
            }
        }
    }
}

TEST(Orbit, ConstraintsEnforced) {
    auto fe = [](std::int64_t v) { return FieldElement::integer(7, v); };
    // FK needs a1 != a8
    EXPECT_THROW(OrbitRepresentative::make(
                     Family::FK, {{"a1", fe(2)}, {"a8", fe(2)}, {"b1", fe(1)}, {"b8", fe(0)}}),
                 NotARepresentative);
    // FN needs b5 != 0
    EXPECT_THROW(
        OrbitRepresentative::make(
            Family::FN,
            {{"a1", fe(1)}, {"a8", fe(2)}, {"b1", fe(1)}, {"b5", fe(0)}, {"b8", fe(1)}}),
        NotARepresentative);
    // K1L1 needs b2 != 0
    EXPECT_THROW(OrbitRepresentative::make(Family::K1L1,
                                           {{"a1", fe(1)}, {"b1", fe(1)}, {"b2", fe(0)}}),
                 NotARepresentative);
    // zero coefficients rejected
    EXPECT_THROW(OrbitRepresentative::make(
                     Family::DD, {{"a1", fe(0)}, {"a8", fe(0)}, {"b1", fe(1)}, {"b8", fe(1)}}),
                 NotARepresentative);
}

TEST(Orbit, NonRepresentativesRejected) {
    auto one = FieldElement::integer(7, 1);
    auto zero = one.zero_like();
    Vec3 z3 = Vec3::zero(zero);
    // generic x-slot not along e1
    Octonion weird(one, Vec3(one, one, zero), z3, one);
    EXPECT_FALSE(match_representative(Octonion::diag(one, one), weird).has_value());
    // both off-diagonal slots populated on a k1-type partner
    Octonion both(one, Vec3::unit(one, 1), Vec3::unit(one, 2), one);
    Octonion k1(one, Vec3::unit(one, 1), z3, one);
    EXPECT_FALSE(match_representative(k1, both).has_value());
    // scalar-unit first with distinct-diagonal upper partner is reducible,
    // hence not a representative
    Octonion notrep(FieldElement::integer(7, 2), Vec3::unit(one, 1), z3,
                    FieldElement::integer(7, 3));
    EXPECT_FALSE(match_representative(Octonion::unit(one), notrep).has_value());
}

TEST(Orbit, SwappedOrderMatch) {
    auto one = FieldElement::integer(5, 1);
    auto zero = one.zero_like();
    // (E, diag) is a K1F instance with a1 = 0; the same pair reversed reads
    // as FK with zero b-parameters
    Octonion E(zero, Vec3::unit(one, 1), Vec3::zero(zero), zero);
    Octonion D = Octonion::diag(one, zero);
    auto direct = match_representative(E, D);
    ASSERT_TRUE(direct.has_value());
    EXPECT_EQ(direct->family, Family::K1F);
    auto rev = match_representative(D, E);
    ASSERT_TRUE(rev.has_value());
    EXPECT_EQ(rev->family, Family::FK);
    // a pair matching in the reversed order only
    Octonion U(one, Vec3::unit(one, 1), Vec3::zero(zero), FieldElement::integer(5, 2));
    Octonion D2 = Octonion::diag(one, FieldElement::integer(5, 3));
    EXPECT_FALSE(match_representative(U, D2).has_value());
    auto m = match_representative(D2, U);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->family, Family::FK);
}
