#include <gtest/gtest.h>

#include <random>

#include "octo/octonion.hpp"
#include "test_util.hpp"

using namespace octo;
using testutil::rand_oct;
using testutil::rand_orthogonal_oct;

namespace {

// Independent transcription of the multiplication rule, written out slot by
// slot with no shared helpers; used as the structure-constant oracle.
Octonion mul_oracle(const Octonion& A, const Octonion& B) {
    const FieldElement &a = A.eta(), &d = A.zeta();
    const FieldElement &ap = B.eta(), &dp = B.zeta();
    const FieldElement &x1 = A.x()[0], &x2 = A.x()[1], &x3 = A.x()[2];
    const FieldElement &y1 = A.y()[0], &y2 = A.y()[1], &y3 = A.y()[2];
    const FieldElement &u1 = B.x()[0], &u2 = B.x()[1], &u3 = B.x()[2];
    const FieldElement &v1 = B.y()[0], &v2 = B.y()[1], &v3 = B.y()[2];

    FieldElement eta = a * ap + x1 * v1 + x2 * v2 + x3 * v3;
    FieldElement zeta = d * dp + y1 * u1 + y2 * u2 + y3 * u3;
    // top right: a u + dp x - (y wedge v)
    FieldElement w1 = y2 * v3 - y3 * v2, w2 = y3 * v1 - y1 * v3, w3 = y1 * v2 - y2 * v1;
    Vec3 x(a * u1 + dp * x1 - w1, a * u2 + dp * x2 - w2, a * u3 + dp * x3 - w3);
    // bottom left: d v + ap y + (x wedge u)
    FieldElement s1 = x2 * u3 - x3 * u2, s2 = x3 * u1 - x1 * u3, s3 = x1 * u2 - x2 * u1;
    Vec3 y(d * v1 + ap * y1 + s1, d * v2 + ap * y2 + s2, d * v3 + ap * y3 + s3);
    return Octonion(eta, x, y, zeta);
}

Octonion basis_elem(const FieldElement& like, int slot) {
    const FieldElement zero = like.zero_like(), one = like.one_like();
    FieldElement s[8] = {zero, zero, zero, zero, zero, zero, zero, zero};
    s[slot] = one;
    return Octonion(s[0], Vec3(s[1], s[2], s[3]), Vec3(s[4], s[5], s[6]), s[7]);
}

}  // namespace

TEST(Octonion, UnitIsNeutral) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 100; ++i) {
        auto a = rand_oct(rng, 7, 1);
        auto one = Octonion::unit(a.eta());
        ASSERT_TRUE(one * a == a);
        ASSERT_TRUE(a * one == a);
    }
}

TEST(Octonion, OrthogonalBasisProductHasZeroNorm) {
    auto one = FieldElement::integer(7, 1);
    auto zero = one.zero_like();
    Octonion A(zero, Vec3::unit(one, 1), Vec3::unit(one, 2), zero);
    Octonion B(zero, Vec3::unit(one, 2), Vec3::unit(one, 1), zero);
    EXPECT_TRUE((A * B).norm().is_zero());
    EXPECT_TRUE(A.norm() * B.norm() == (A * B).norm());
}

TEST(Octonion, StructureConstantsMatchOracle) {
    auto like = FieldElement::integer(5, 1);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            Octonion a = basis_elem(like, i), b = basis_elem(like, j);
            ASSERT_TRUE(a * b == mul_oracle(a, b)) << "slots " << i << "," << j;
        }
    }
    std::mt19937_64 rng(22);
    for (int i = 0; i < 300; ++i) {
        auto a = rand_oct(rng, 5, 1), b = rand_oct(rng, 5, 1);
        ASSERT_TRUE(a * b == mul_oracle(a, b));
    }
}

TEST(Octonion, ConjugationExamples) {
    std::mt19937_64 rng(23);
    auto one = FieldElement::integer(7, 1);
    EXPECT_TRUE(Octonion::unit(one).conj() == Octonion::unit(one));
    for (int i = 0; i < 1000; ++i) {
        auto a = rand_oct(rng, 7, 1);
        ASSERT_TRUE(a.conj().conj() == a);
        // A + conj(A) = T(A) 1
        ASSERT_TRUE(a + a.conj() == Octonion::unit(one).scaled(a.trace()));
        // conj(A) A = N(A) 1
        ASSERT_TRUE(a.conj() * a == Octonion::unit(one).scaled(a.norm()));
    }
}

TEST(Octonion, ConjIsAntiAutomorphism) {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 1000; ++i) {
        auto a = rand_oct(rng, 3, 2), b = rand_oct(rng, 3, 2);
        ASSERT_TRUE((a * b).conj() == b.conj() * a.conj());
    }
}

TEST(Octonion, NormTraceExamples) {
    auto two = FieldElement::integer(7, 2), three = FieldElement::integer(7, 3);
    EXPECT_TRUE(Octonion::diag(two, three).norm() == FieldElement::integer(7, 6));
    EXPECT_TRUE(Octonion::diag(two, three).trace() == FieldElement::integer(7, 5));
    auto one = FieldElement::integer(7, 1);
    Octonion a(one.zero_like(), Vec3::unit(one, 1), Vec3::unit(one, 1), one.zero_like());
    EXPECT_TRUE(a.norm() == -one);
}

TEST(Octonion, InverseExamples) {
    auto one = FieldElement::integer(7, 1);
    EXPECT_TRUE(Octonion::unit(one).inverse() == Octonion::unit(one));
    auto inv = Octonion::diag(FieldElement::integer(7, 2), FieldElement::integer(7, 3)).inverse();
    EXPECT_TRUE(inv == Octonion::diag(FieldElement::integer(7, 4), FieldElement::integer(7, 5)));
    EXPECT_THROW(Octonion::diag(one, one.zero_like()).inverse(), SingularElement);
    std::mt19937_64 rng(25);
    int checked = 0;
    while (checked < 1000) {
        auto a = rand_oct(rng, 7, 1);
        if (a.norm().is_zero()) continue;
        auto b = rand_oct(rng, 7, 1);
        ASSERT_TRUE(a.inverse() * (a * b) == b);
        ++checked;
    }
}

TEST(Octonion, KirmseIdentityWithoutInvertibility) {
    std::mt19937_64 rng(26);
    for (int i = 0; i < 1000; ++i) {
        auto a = rand_oct(rng, 2, 1), b = rand_oct(rng, 2, 1);
        ASSERT_TRUE(a.conj() * (a * b) == b.scaled(a.norm()));
    }
}

TEST(Octonion, AlternativeAndFlexibleLaws) {
    std::mt19937_64 rng(27);
    for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {2, 2}, {3, 1}}) {
        for (int i = 0; i < 700; ++i) {
            auto a = rand_oct(rng, p, m), b = rand_oct(rng, p, m);
            ASSERT_TRUE((a * b) * b == a * (b * b));
            ASSERT_TRUE(a * (b * a) == (a * b) * a);
        }
    }
}

TEST(Octonion, PowIterBasics) {
    std::mt19937_64 rng(28);
    auto a = rand_oct(rng, 7, 1);
    EXPECT_TRUE(a.pow_iter(0) == Octonion::unit(a.eta()));
    EXPECT_TRUE(a.pow_iter(1) == a);
    for (int i = 0; i < 300; ++i) {
        auto b = rand_oct(rng, 7, 1);
        int mm = static_cast<int>(rng() % 5), nn = static_cast<int>(rng() % 4);
        ASSERT_TRUE(b.pow_iter(mm) * b.pow_iter(nn) == b.pow_iter(mm + nn));
    }
}

TEST(Octonion, FPolyExamples) {
    // f(2, 3, 3) = 4 + 6 + 9 = 19 over a characteristic-zero backend
    auto f = f_poly(FieldElement::complex_num(2, 0), FieldElement::complex_num(3, 0), 3);
    EXPECT_TRUE(f == FieldElement::complex_num(19, 0));
    // f(a, a, l) = l a^{l-1}: zero when the characteristic divides l
    auto a = FieldElement::integer(3, 2);
    EXPECT_TRUE(f_poly(a, a, 3).is_zero());
    EXPECT_TRUE(f_poly(a, a, 6).is_zero());
    std::mt19937_64 rng(29);
    for (int i = 0; i < 1000; ++i) {
        auto x = testutil::rand_elem(rng, 7, 1), y = testutil::rand_elem(rng, 7, 1);
        if (x == y) continue;
        std::int64_t l = 1 + rng() % 8;
        ASSERT_TRUE(f_poly(x, y, l) * (x - y) == x.pow(l) - y.pow(l));
    }
}

TEST(Octonion, PowOrthogonalExample) {
    // (2, b; c, 3) over F_7 with <b,c> = 0 and l = 2: (4, 5b; 5c, 2)
    auto one = FieldElement::integer(7, 1);
    Octonion a(FieldElement::integer(7, 2), Vec3::unit(one, 1), Vec3::unit(one, 2),
               FieldElement::integer(7, 3));
    auto sq = a.pow_orthogonal(2);
    EXPECT_TRUE(sq.eta() == FieldElement::integer(7, 4));
    EXPECT_TRUE(sq.zeta() == FieldElement::integer(7, 2));
    EXPECT_TRUE(sq.x()[0] == FieldElement::integer(7, 5));
    EXPECT_TRUE(sq.y()[1] == FieldElement::integer(7, 5));
    EXPECT_TRUE(a.pow_orthogonal(1) == a);
    Octonion bad(one, Vec3::unit(one, 1), Vec3::unit(one, 1), one);
    EXPECT_THROW(bad.pow_orthogonal(2), PreconditionViolated);
}

TEST(Octonion, PowerClosedFormInvariant) {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 200; ++i) {
        auto a = testutil::rand_elem(rng, 5, 1), d = testutil::rand_elem(rng, 5, 1);
        std::int64_t l = 1 + rng() % 9;
        auto cf = PowerClosedForm::make(a, d, l);
        FieldElement acc = a.zero_like();
        for (std::int64_t j = 0; j < l; ++j) acc = acc + a.pow(j) * d.pow(l - 1 - j);
        ASSERT_TRUE(cf.f_value == acc);
    }
}

TEST(Octonion, PowerOraclesAgree) {
    std::mt19937_64 rng(30);
    for (int i = 0; i < 400; ++i) {
        auto a = rand_oct(rng, 5, 1);
        std::int64_t l = rng() % 13;
        ASSERT_TRUE(a.pow_ch(l) == a.pow_iter(l));
        auto b = rand_orthogonal_oct(rng, 3, 1);
        std::int64_t l2 = 1 + rng() % 12;
        ASSERT_TRUE(b.pow_orthogonal(l2) == b.pow_iter(l2));
    }
    // diagonal elements power componentwise
    auto d = Octonion::diag(FieldElement::integer(7, 3), FieldElement::integer(7, 5));
    EXPECT_TRUE(d.pow_ch(4) ==
                Octonion::diag(FieldElement::integer(7, 3).pow(4),
                               FieldElement::integer(7, 5).pow(4)));
    // A^2 = T(A) A - N(A) 1
    auto a = rand_oct(rng, 7, 1);
    EXPECT_TRUE(a.pow_ch(2) ==
                a.scaled(a.trace()) - Octonion::unit(a.eta()).scaled(a.norm()));
}

TEST(Octonion, CompositionIdentity) {
    std::mt19937_64 rng(31);
    for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {7, 2}, {2, 4}, {3, 2}}) {
        for (int i = 0; i < 1500; ++i) {
            auto a = rand_oct(rng, p, m), b = rand_oct(rng, p, m);
            ASSERT_TRUE((a * b).norm() == a.norm() * b.norm());
        }
    }
    for (int i = 0; i < 1500; ++i) {
        auto a = testutil::rand_complex_oct(rng), b = testutil::rand_complex_oct(rng);
        ASSERT_TRUE((a * b).norm() == a.norm() * b.norm());
    }
}

TEST(Octonion, MixedLevelConstructionLifts) {
    auto low = FieldElement::integer(3, 1);
    auto high = FieldElement::finite(3, 2, {0, 1});
    Octonion a(low, Vec3::zero(low), Vec3::zero(low), high);
    EXPECT_EQ(a.eta().degree(), 2);
    EXPECT_EQ(a.zeta().degree(), 2);
}
