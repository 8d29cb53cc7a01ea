#include "mks/family.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <set>

using namespace mks;

namespace {

// Brute-force enumeration of the lattice data, independent of CurveFamily.
struct Enumerated {
    std::vector<int> B, C;
    int mu = 0, mu_hat = 0;
};

Enumerated enumerate(int k, int n) {
    Enumerated r;
    for (int i = 0; i <= n - 2; ++i)
        for (int j = 0; j <= k - 2; ++j) {
            ++r.mu;
            if (i + j <= n - 2) ++r.mu_hat;
            int s = k * i + n * j - k * n;
            if (s <= 0) continue;
            r.B.push_back(s);
            if (i + j <= n - 2) r.C.push_back(s);
        }
    std::sort(r.B.begin(), r.B.end());
    std::sort(r.C.begin(), r.C.end());
    return r;
}

const std::vector<std::pair<int, int>> kCases = {{2, 5}, {3, 7}, {3, 8}, {4, 9}, {5, 11}, {5, 12}, {6, 13}, {7, 15}, {7, 16}};

}  // namespace

TEST(Family, RejectsInvalidExponents) {
    EXPECT_THROW(CurveFamily(4, 10), std::invalid_argument);
    EXPECT_THROW(CurveFamily(5, 9), std::invalid_argument);
    EXPECT_THROW(CurveFamily(1, 5), std::invalid_argument);
    EXPECT_THROW(CurveFamily(3, 6), std::invalid_argument);
}

TEST(Family, SixThirteenIndexSets) {
    CurveFamily f = build_family(6, 13);
    EXPECT_EQ(f.I_C(), (std::vector<int>{2, 3, 4, 9, 10, 16}));
    EXPECT_EQ(f.I_B(), (std::vector<int>{1, 2, 3, 4, 8, 9, 10, 14, 15, 16, 21, 22, 27, 28, 34, 40}));
    EXPECT_EQ(f.b(), 16);
    EXPECT_EQ(f.mu(), 60);
    EXPECT_EQ(f.mu_hat(), 50);
    EXPECT_EQ(f.omega(), 40);
    EXPECT_EQ(f.varpi(), 16);
    std::set<std::pair<int, int>> c0;
    for (int s : f.I_C()) c0.insert({f.point_of(s).i, f.point_of(s).j});
    EXPECT_EQ(c0, (std::set<std::pair<int, int>>{{9, 2}, {7, 3}, {5, 4}, {8, 3}, {6, 4}, {7, 4}}));
}

TEST(Family, SevenFifteenC) {
    EXPECT_EQ(CurveFamily(7, 15).I_C(), (std::vector<int>{2, 3, 4, 5, 10, 11, 12, 18, 19, 26}));
}

TEST(Family, TwoFiveIsRigid) {
    CurveFamily f(2, 5);
    EXPECT_TRUE(f.I_B().empty());
    EXPECT_TRUE(f.I_C().empty());
    EXPECT_EQ(f.deformation_poly({}), MPoly::parse("y^2 + x^5"));
}

TEST(Family, MatchesBruteForceEnumeration) {
    for (auto [k, n] : kCases) {
        CurveFamily f(k, n);
        auto e = enumerate(k, n);
        EXPECT_EQ(f.I_B(), e.B) << k << "," << n;
        EXPECT_EQ(f.I_C(), e.C) << k << "," << n;
        EXPECT_EQ(f.mu(), e.mu);
        EXPECT_EQ(f.mu(), (n - 1) * (k - 1));
        EXPECT_EQ(f.mu_hat(), e.mu_hat);
        EXPECT_EQ(f.mu_hat(), f.mu() - (k - 2) * (k - 1) / 2);
    }
}

TEST(Family, BasisDegreesStrictlyIncrease) {
    for (auto [k, n] : kCases) {
        CurveFamily f(k, n);
        for (std::size_t q = 1; q < f.basis().size(); ++q)
            EXPECT_LT(f.degree(f.basis()[q - 1]), f.degree(f.basis()[q]));
        for (int q = 0; q < f.mu(); ++q) EXPECT_EQ(f.basis_index(f.basis()[q]), q);
    }
}

TEST(Family, OmegaVarpiAndInclusions) {
    for (auto [k, n] : kCases) {
        CurveFamily f(k, n);
        EXPECT_EQ(f.omega() - f.varpi(), k * (k - 2));
        for (int s : f.I_C()) EXPECT_LE(s, f.varpi());
        EXPECT_TRUE(std::includes(f.I_D().begin(), f.I_D().end(), f.I_C().begin(), f.I_C().end()));
        EXPECT_TRUE(std::includes(f.I_B().begin(), f.I_B().end(), f.I_D().begin(), f.I_D().end()));
    }
}

TEST(Family, DeformationIsHomogeneousOfDegreeKn) {
    for (auto [k, n] : kCases) {
        CurveFamily f(k, n);
        EXPECT_EQ(f.deformation_poly(f.I_B()).weighted_degree(f.grading()), k * n);
        EXPECT_EQ(f.deformation_poly(f.I_C()).weighted_degree(f.grading()), k * n);
    }
}

TEST(Family, SixThirteenFC) {
    CurveFamily f(6, 13);
    EXPECT_EQ(f.deformation_poly(f.I_C()),
              MPoly::parse("y^6 + x^13 + s_2*x^9*y^2 + s_3*x^7*y^3 + s_4*x^5*y^4 + s_9*x^8*y^3 + s_10*x^6*y^4 + s_16*x^7*y^4"));
}

TEST(Family, RestrictionFromB) {
    for (auto [k, n] : kCases) {
        CurveFamily f(k, n);
        MPoly FB = f.deformation_poly(f.I_B());
        for (int s : f.I_BminusC()) FB = FB.substitute(var_s(s), MPoly());
        EXPECT_EQ(FB, f.deformation_poly(f.I_C()));
    }
}

TEST(Family, RejectsSetsOutsideRange) {
    CurveFamily f(6, 13);
    EXPECT_THROW(f.deformation_poly({2, 3}), std::invalid_argument);
    EXPECT_THROW(f.deformation_poly({2, 3, 4, 9, 10, 16, 5}), std::invalid_argument);
    EXPECT_NO_THROW(f.deformation_poly({2, 3, 4, 9, 10, 16, 40}));
}
