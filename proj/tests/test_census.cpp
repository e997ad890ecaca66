#include <gtest/gtest.h>

#include <random>

#include "octo/census.hpp"
#include "test_util.hpp"

using namespace octo;
using testutil::rand_oct;

namespace {

CensusOptions big_cap() {
    CensusOptions opt;
    opt.cap = 1u << 17;
    return opt;
}

}  // namespace

TEST(Census, EnumerationCounts) {
    EXPECT_EQ(enumerate_octonions(2, 1, 256).size(), 256u);
    EXPECT_EQ(enumerate_octonions(3, 1, 6561).size(), 6561u);
    EXPECT_EQ(enumerate_octonions(2, 2, 1u << 17).size(), 65536u);
    EXPECT_THROW(enumerate_octonions(5, 1, 6561), CapExceeded);
    // no duplicates on a sample
    auto all = enumerate_octonions(2, 1, 256);
    for (size_t i = 0; i < 40; ++i)
        for (size_t j = i + 1; j < 40; ++j) ASSERT_FALSE(all[i] == all[j]);
}

TEST(Census, TwoPhaseMatchesNaiveDoubleLoop) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 4; ++trial) {
        Octonion A1 = rand_oct(rng, 2, 1), A2 = rand_oct(rng, 2, 1);
        if (A1.is_zero() || A2.is_zero()) continue;
        auto fast = image_census_bitmap(A1, A2, 2, 2, 2, 1, false);
        auto naive = image_census_naive(A1, A2, 2, 2, 2, 1);
        ASSERT_EQ(fast, naive);
    }
    // also with distinct exponents
    auto one = FieldElement::integer(2, 1);
    Octonion U = Octonion::unit(one);
    EXPECT_EQ(image_census_bitmap(U, U, 2, 3, 2, 1, false),
              image_census_naive(U, U, 2, 3, 2, 1));
}

TEST(Census, ParallelKernelMatchesSerial) {
    std::mt19937_64 rng(62);
    for (auto [p, m] : std::vector<std::pair<std::int64_t, int>>{{2, 1}, {3, 1}}) {
        Octonion A1 = rand_oct(rng, p, m), A2 = rand_oct(rng, p, m);
        auto serial = image_census_bitmap(A1, A2, 2, 2, p, m, false);
        auto parallel = image_census_bitmap(A1, A2, 2, 2, p, m, true);
        ASSERT_EQ(serial, parallel);
        CensusOptions two_workers;
        two_workers.workers = 2;
        auto par2 = image_census_bitmap(A1, A2, 2, 2, p, m, true, two_workers);
        ASSERT_EQ(serial, par2);
    }
}

TEST(Census, FamilyOneImage) {
    // (diag(1,0), diag(1,0)): the image is exactly the zero-bottom-row set
    auto vals = std::vector<FieldElement>{FieldElement::integer(2, 1),
                                          FieldElement::integer(2, 1)};
    auto [A1, A2] = nonsurjective_family_pair(1, vals, 2, 1);
    CensusReport rep = image_census(A1, A2, 2, 2, 2, 1);
    EXPECT_EQ(rep.total, 256u);
    EXPECT_EQ(rep.image_size, 16u);
    EXPECT_TRUE(rep.proper_subset);
    EXPECT_EQ(rep.observed_mask[4], "zero");
    EXPECT_EQ(rep.observed_mask[7], "zero");
    EXPECT_FALSE(rep.non_image_samples.empty());
}

TEST(Census, EqualNilpotentPairIsProper) {
    auto [A1, A2] = nonsurjective_family_pair(5, {}, 2, 1);
    CensusReport rep = image_census(A1, A2, 2, 2, 2, 1);
    EXPECT_LT(rep.image_size, 256u);
    EXPECT_EQ(rep.image_size, 16u);  // free slots eta, x1, y2, y3
}

TEST(Census, AllFamiliesProperAndMasked) {
    auto rows = census_nonsurjective_families(2, 1, 2, 2);
    int families_seen = 0, last = 0;
    for (const auto& r : rows) {
        ASSERT_TRUE(r.proper_subset) << "family " << r.family << " params " << r.params;
        ASSERT_TRUE(r.mask_respected) << "family " << r.family << " params " << r.params;
        if (r.family != last) {
            ++families_seen;
            last = r.family;
        }
    }
    EXPECT_EQ(families_seen, 8);
}

TEST(Census, SolverCertificateLandsInImage) {
    // base-field certificates of degree 1 name image points the census sees
    std::mt19937_64 rng(63);
    auto one = FieldElement::integer(2, 1);
    auto zero = one.zero_like();
    Octonion A1 = Octonion::diag(one, zero);
    Octonion A2 = Octonion::diag(zero, one);
    auto mark = image_census_bitmap(A1, A2, 2, 2, 2, 1, false);
    auto enumeration = enumerate_octonions(2, 1, 256);
    int confirmed = 0;
    for (const auto& A : enumeration) {
        auto res = solve_noninvertible(ProblemInstance{A1, A2, 2, 2, A});
        ASSERT_TRUE(std::holds_alternative<SolveCertificate>(res));
        ++confirmed;
    }
    // the split route is fully surjective over F_2, so the census must agree
    EXPECT_EQ(confirmed, 256);
    for (auto b : mark) EXPECT_EQ(b, 1);
}

TEST(Census, CapGate) {
    auto one = FieldElement::integer(5, 1);
    Octonion U = Octonion::unit(one);
    EXPECT_THROW(image_census(U, U, 2, 2, 5, 1), CapExceeded);
    // with the cap lifted, a small-power-image pair runs fine at q = 5
    auto [A1, A2] = nonsurjective_family_pair(1, {one, one}, 5, 1);
    CensusOptions opt = big_cap();
    opt.cap = 390625;
    EXPECT_NO_THROW(image_census_bitmap(A1, A2, 2, 2, 5, 1, true, opt));
}
