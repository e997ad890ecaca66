#include <gtest/gtest.h>

#include <random>

#include "octo/json_io.hpp"
#include "octo/solvers.hpp"
#include "test_util.hpp"

using namespace octo;
using testutil::rand_elem;
using testutil::rand_nonzero;
using testutil::rand_oct;

namespace {

std::mt19937_64 rng(51);

OrbitRepresentative random_rep(Family f, std::int64_t p) {
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

Octonion nilpotent_e1(std::int64_t p) {
    auto one = FieldElement::integer(p, 1);
    auto zero = one.zero_like();
    return Octonion(zero, Vec3::unit(one, 1), Vec3::zero(zero), zero);
}

}  // namespace

TEST(ScalarPower, DiagonalRoots) {
    auto A = Octonion::diag(FieldElement::integer(7, 2), FieldElement::integer(7, 4));
    auto cert = solve_scalar_power(A, FieldElement::integer(7, 1), 2);
    EXPECT_TRUE(cert.verified);
    EXPECT_TRUE(cert.X.x().is_zero() && cert.X.y().is_zero());
    EXPECT_TRUE(cert.X.eta().pow(2) == A.eta());
    EXPECT_TRUE(cert.X.zeta().pow(2) == A.zeta());
}

TEST(ScalarPower, SpecInstances) {
    // 2 X^2 = (1, 0; 0, 2) over F_7
    auto A = Octonion::diag(FieldElement::integer(7, 1), FieldElement::integer(7, 2));
    auto cert = solve_scalar_power(A, FieldElement::integer(7, 2), 2);
    EXPECT_TRUE(cert.verified);
    EXPECT_TRUE(cert.X.pow_ch(2).scaled(FieldElement::integer(7, 2)) == A);
    // (1, e1; e2, 2) with k = 3
    auto one = FieldElement::integer(7, 1);
    Octonion B(one, Vec3::unit(one, 1), Vec3::unit(one, 2), FieldElement::integer(7, 2));
    auto cert2 = solve_scalar_power(B, one, 3);
    EXPECT_TRUE(cert2.verified);
}

TEST(ScalarPower, PreconditionsEnforced) {
    auto one = FieldElement::integer(7, 1);
    EXPECT_THROW(solve_scalar_power(Octonion::diag(one, one), one, 2), PreconditionViolated);
    Octonion nonorth(one, Vec3::unit(one, 1), Vec3::unit(one, 1), one + one);
    EXPECT_THROW(solve_scalar_power(nonorth, one, 2), PreconditionViolated);
    EXPECT_THROW(
        solve_scalar_power(Octonion::diag(one, one + one), one.zero_like(), 2),
        PreconditionViolated);
}

TEST(ScalarPower, RandomVerified) {
    int done = 0;
    while (done < 400) {
        std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7}[rng() % 4];
        Octonion A = testutil::rand_orthogonal_oct(rng, p, 1);
        if (A.eta() == A.zeta()) continue;
        auto alpha1 = rand_nonzero(rng, p, 1);
        std::int64_t k = 2 + rng() % 5;
        auto cert = solve_scalar_power(A, alpha1, k);
        ASSERT_TRUE(cert.verified);
        ASSERT_LE(cert.max_tower_degree, kDefaultMaxDegree);
        ++done;
    }
}

TEST(Reduce, CaseOneResidualShape) {
    // diagonal/diagonal over F_49: residual is conjugate-reducible
    auto a1 = FieldElement::finite(7, 2, {1, 1}), a8 = FieldElement::finite(7, 2, {3, 0});
    auto b1 = FieldElement::finite(7, 2, {2, 5}), b8 = FieldElement::finite(7, 2, {0, 1});
    Octonion A1 = Octonion::diag(a1, a8), A2 = Octonion::diag(b1, b8);
    for (int i = 0; i < 25; ++i) {
        Octonion A = rand_oct(rng, 7, 2);
        auto [Y, R] = reduce_invertible_case(1, A, A1, A2, 2);
        ASSERT_TRUE(R == A - A2 * Y.pow_ch(2));
        ASSERT_TRUE(R.x().dot(R.y()).is_zero());
        ASSERT_FALSE(a8 * R.eta() == a1 * R.zeta());
        auto cert = apply_conjugate_reduction(R, A1, 2);
        ASSERT_TRUE(cert.verified);
    }
}

TEST(Reduce, CaseTwoNilpotentPartnerShape) {
    // upper partner with vanishing diagonal: residual picks up the
    // (0, b2, b3) / (c1, 0, 0) pattern
    auto one = FieldElement::integer(7, 1);
    auto zero = one.zero_like();
    Octonion A1 = Octonion::diag(FieldElement::integer(7, 2), FieldElement::integer(7, 3));
    Octonion A2(zero, Vec3::unit(one, 1), Vec3::zero(zero), FieldElement::integer(7, 4));
    for (int i = 0; i < 25; ++i) {
        Octonion A = rand_oct(rng, 7, 1);
        auto [Y, R] = reduce_invertible_case(2, A, A1, A2, 3);
        ASSERT_TRUE(R.x()[0].is_zero());
        ASSERT_TRUE(R.y()[1].is_zero() && R.y()[2].is_zero());
        ASSERT_TRUE(apply_conjugate_reduction(R, A1, 2).verified);
    }
}

TEST(Reduce, ZeroTargetStillReduces) {
    Octonion A1 = Octonion::diag(FieldElement::integer(5, 2), FieldElement::integer(5, 1));
    Octonion A2 = Octonion::diag(FieldElement::integer(5, 3), FieldElement::integer(5, 0));
    Octonion A = Octonion::zero(FieldElement::integer(5, 0));
    auto [Y, R] = reduce_invertible_case(1, A, A1, A2, 2);
    auto cert = apply_conjugate_reduction(R, A1, 2);
    EXPECT_TRUE(cert.verified);
    EXPECT_TRUE(A1 * cert.X.pow_ch(2) + A2 * Y.pow_ch(2) == A);
}

TEST(SolveInvertible, UnitPair) {
    auto inst = ProblemInstance{
        Octonion::unit(FieldElement::integer(7, 1)), Octonion::unit(FieldElement::integer(7, 1)),
        2, 2, Octonion::diag(FieldElement::integer(7, 5), FieldElement::integer(7, 0))};
    auto cert = solve_invertible(inst);
    EXPECT_TRUE(cert.verified);
}

TEST(SolveInvertible, ZeroTarget) {
    auto inst = ProblemInstance{
        Octonion::unit(FieldElement::integer(3, 1)), Octonion::unit(FieldElement::integer(3, 2)),
        2, 3, Octonion::zero(FieldElement::integer(3, 0))};
    EXPECT_TRUE(solve_invertible(inst).verified);
}

TEST(SolveInvertible, NilpotentSecondCoefficient) {
    // EK1 with b1 = 0: the partner is the nilpotent (0, e1; 0, 0)
    for (std::int64_t p : {2, 3, 5, 7}) {
        auto rep = OrbitRepresentative::make(
            Family::EK1,
            {{"a1", FieldElement::integer(p, 1)}, {"b1", FieldElement::integer(p, 0)}});
        for (int i = 0; i < 20; ++i) {
            auto inst = ProblemInstance::from_rep(rep, 2, 2, rand_oct(rng, p, 1));
            ASSERT_TRUE(solve_invertible(inst).verified);
        }
    }
}

TEST(SolveNoninvertible, SplitDiagonalRoute) {
    // diag(a1, 0) + diag(0, b8): surjective by the split construction
    auto one = FieldElement::integer(7, 1);
    auto zero = one.zero_like();
    Octonion A1 = Octonion::diag(FieldElement::integer(7, 3), zero);
    Octonion A2 = Octonion::diag(zero, FieldElement::integer(7, 2));
    for (int i = 0; i < 30; ++i) {
        auto inst = ProblemInstance{A1, A2, 2, 3, rand_oct(rng, 7, 1)};
        auto res = solve_noninvertible(inst);
        ASSERT_TRUE(std::holds_alternative<SolveCertificate>(res));
    }
}

TEST(SolveNoninvertible, NilpotentPairShapes) {
    // family (5): in-image targets produce certificates, out-of-image a witness
    auto E = nilpotent_e1(2);
    auto zero = FieldElement::integer(2, 0);
    auto one = FieldElement::integer(2, 1);
    // in the image: (a, (b1,0,0); (0,c2,c3), 0)
    Octonion good(one, Vec3(one, zero, zero), Vec3(zero, one, one), zero);
    auto res = solve_noninvertible(ProblemInstance{E, E, 2, 2, good});
    ASSERT_TRUE(std::holds_alternative<SolveCertificate>(res));
    // bottom-right must vanish on the image
    Octonion bad = Octonion::diag(zero, one);
    auto res2 = solve_noninvertible(ProblemInstance{E, E, 2, 2, bad});
    ASSERT_TRUE(std::holds_alternative<ObstructionWitness>(res2));
    const auto& w = std::get<ObstructionWitness>(res2);
    EXPECT_EQ(w.family, 5);
    bool zeta_named = false;
    for (const auto& v : w.violated) zeta_named |= v.find("zeta") != std::string::npos;
    EXPECT_TRUE(zeta_named);
}

TEST(Solve, DispatchesByNorm) {
    // invertible first coefficient goes through the invertible pipeline
    auto rep = random_rep(Family::DD, 7);
    auto [A1, A2] = rep.realize();
    auto inst = ProblemInstance{A1, A2, 2, 2, rand_oct(rng, 7, 1)};
    auto res = solve(inst);
    if (!A1.norm().is_zero() || !A2.norm().is_zero())
        EXPECT_TRUE(std::holds_alternative<SolveCertificate>(res));
    EXPECT_THROW(solve(ProblemInstance{A1, A2, 1, 2, inst.target}), PreconditionViolated);
    // raw pairs outside the catalog are rejected
    auto one = FieldElement::integer(7, 1);
    Octonion weird(one, Vec3(one, one, one), Vec3(one, one, one), one);
    EXPECT_THROW(solve(ProblemInstance{weird, weird, 2, 2, inst.target}), NotARepresentative);
}

TEST(Solve, SwapSymmetry) {
    int done = 0;
    while (done < 200) {
        std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7}[rng() % 4];
        Family f = static_cast<Family>(rng() % 11);
        auto rep = random_rep(f, p);
        auto [A1, A2] = rep.realize();
        std::int64_t k1 = 2 + rng() % 2, k2 = 2 + rng() % 2;
        Octonion A = rand_oct(rng, p, 1);
        auto res = solve(ProblemInstance{A1, A2, k1, k2, A});
        auto swapped = solve(ProblemInstance{A2, A1, k2, k1, A});
        ASSERT_EQ(std::holds_alternative<SolveCertificate>(res),
                  std::holds_alternative<SolveCertificate>(swapped));
        ++done;
    }
}

TEST(Solve, Deterministic) {
    auto rep = random_rep(Family::FN, 7);
    auto inst = ProblemInstance::from_rep(rep, 3, 2, rand_oct(rng, 7, 1));
    auto c1 = solve_invertible(inst);
    auto c2 = solve_invertible(inst);
    EXPECT_EQ(certificate_to_json(c1).dump(), certificate_to_json(c2).dump());
}

TEST(Classify, SpecVerdicts) {
    auto one = FieldElement::integer(7, 1);
    auto zero = one.zero_like();
    // (diag(a1,0), diag(b1,0)) is family (1)
    auto v1 = classify(Octonion::diag(one, zero),
                       Octonion::diag(FieldElement::integer(7, 3), zero));
    EXPECT_FALSE(v1.surjective);
    EXPECT_EQ(v1.family, 1);
    ASSERT_TRUE(v1.mask.has_value());
    auto rendered = v1.mask->render();
    EXPECT_EQ(rendered[4], "zero");
    EXPECT_EQ(rendered[7], "zero");
    // invertible diagonal first: surjective
    auto v2 = classify(Octonion::diag(one, FieldElement::integer(7, 2)),
                       Octonion::diag(zero, one));
    EXPECT_TRUE(v2.surjective);
    // ((0,e1;0,0), (0,0;e2,0)) is family (8)
    Octonion E = nilpotent_e1(7);
    Octonion M(zero, Vec3::zero(zero), Vec3::unit(one, 2), zero);
    auto v3 = classify(E, M);
    EXPECT_FALSE(v3.surjective);
    EXPECT_EQ(v3.family, 8);
    // out-of-catalog pairs are rejected
    Octonion weird(one, Vec3(one, one, one), Vec3::zero(zero), one);
    EXPECT_THROW(classify(weird, weird), NotARepresentative);
}

TEST(Classify, SwappedOrderVerdict) {
    // (E, diag(b1, 0)) is family (3) read in the swapped order
    auto one = FieldElement::integer(5, 1);
    auto zero = one.zero_like();
    auto v = classify(nilpotent_e1(5), Octonion::diag(one, zero));
    EXPECT_FALSE(v.surjective);
    EXPECT_EQ(v.family, 3);
    EXPECT_TRUE(v.matched_swapped);
}

TEST(Classify, SurjectiveVerdictsHaveFreeMasks) {
    int done = 0;
    while (done < 300) {
        std::int64_t p = std::vector<std::int64_t>{2, 3, 5, 7}[rng() % 4];
        Family f = static_cast<Family>(rng() % 11);
        auto rep = random_rep(f, p);
        auto [A1, A2] = rep.realize();
        Verdict v = classify(A1, A2);
        if (v.surjective) {
            ASSERT_FALSE(compute_mask(A1, A2).restricts())
                << family_name(f) << " claimed surjective with a restricting mask";
        } else {
            ASSERT_TRUE(v.mask->restricts());
        }
        ++done;
    }
}

TEST(Mask, LinkedSlotsDetected) {
    // family (7): zeta is tied to x2 by the second coefficient's beta8
    auto one = FieldElement::integer(3, 1);
    auto zero = one.zero_like();
    Octonion E = nilpotent_e1(3);
    Octonion A2(zero, Vec3::unit(one, 2), Vec3::zero(zero), FieldElement::integer(3, 2));
    auto mask = compute_mask(E, A2);
    auto r = mask.render();
    EXPECT_EQ(r[3], "zero");               // x3
    EXPECT_EQ(r[7], "linked:2*x2");        // zeta = b8 * x2
    // family (6): y1 tied to x3 through beta1 (anchor is the earlier slot)
    Octonion B2(FieldElement::integer(3, 2), Vec3::unit(one, 2), Vec3::zero(zero), zero);
    auto r6 = compute_mask(E, B2).render();
    EXPECT_EQ(r6[7], "zero");
    EXPECT_EQ(r6[3], "free");
    EXPECT_EQ(r6[4], "linked:2*x3");  // y1 = beta1^{-1} x3
}
