#include "mks/linalg.hpp"
#include "mks/polygcd.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace mks;

namespace {

SPoly random_poly(std::mt19937_64& rng, const std::vector<int>& vars, int terms, int maxdeg) {
    std::uniform_int_distribution<int> coef(-5, 5), deg(0, maxdeg);
    SPoly p;
    for (int i = 0; i < terms; ++i) {
        SPoly t(coef(rng));
        for (int v : vars) {
            int e = deg(rng);
            for (int j = 0; j < e; ++j) t = t * SPoly::var(v);
        }
        p += t;
    }
    return p;
}

bool divides(const SPoly& d, const SPoly& p) { return try_divide(p, d).has_value(); }

// Leibniz expansion over all permutations.
SPoly leibniz(const std::vector<std::vector<SPoly>>& m) {
    std::vector<int> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    SPoly det;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j) inv += perm[i] > perm[j];
        SPoly t(inv % 2 ? -1 : 1);
        for (std::size_t i = 0; i < perm.size(); ++i) t = t * m[i][perm[i]];
        det += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace

TEST(PolyGcd, SmallExamples) {
    SPoly a = SPoly::var(2), b = SPoly::var(3);
    EXPECT_EQ(poly_gcd(a * a * b, a * b * b), a * b);
    EXPECT_EQ(poly_gcd(a * Rational(6), a * Rational(4)), a);
    EXPECT_EQ(poly_gcd(a + b, a - b), SPoly(1));
    EXPECT_EQ(poly_gcd(SPoly(), a * Rational(-3)), a);
    EXPECT_EQ(poly_gcd((a + b) * (a + b), (a + b) * (a - b)), a + b);
}

TEST(PolyGcd, CommonFactorOfRandomProducts) {
    std::mt19937_64 rng(31);
    std::vector<int> vars{2, 3, 4};
    for (int trial = 0; trial < 30; ++trial) {
        SPoly g = random_poly(rng, vars, 3, 2), u = random_poly(rng, vars, 3, 2), w = random_poly(rng, vars, 3, 2);
        if (g.is_zero() || u.is_zero() || w.is_zero()) continue;
        SPoly a = g * u, b = g * w;
        SPoly d = poly_gcd(a, b);
        EXPECT_TRUE(divides(d, a)) << trial;
        EXPECT_TRUE(divides(d, b)) << trial;
        EXPECT_TRUE(divides(g, d)) << trial;
        EXPECT_EQ(d, poly_gcd(b, a));
        EXPECT_EQ(d, primitive_integer(d));
    }
}

TEST(PolyGcd, LcmAndSquarefree) {
    SPoly p = SPoly::var(2) * SPoly::var(2) - SPoly::var(4) * Rational(3);
    SPoly q = SPoly::var(3) + SPoly::var(2) * Rational(1, 2);
    EXPECT_EQ(squarefree(p * p * q), primitive_integer(p * q));
    EXPECT_EQ(squarefree(p * q * q * q * Rational(7)), primitive_integer(p * q));
    EXPECT_EQ(poly_lcm(p * q, q * q), primitive_integer(p * q * q));
    EXPECT_TRUE(poly_lcm(p, SPoly()).is_zero());
}

TEST(PolyGcd, DivisionRejectsNonMultiples) {
    SPoly a = SPoly::var(2) + SPoly(1);
    EXPECT_FALSE(try_divide(SPoly::var(2), a).has_value());
    EXPECT_EQ(divide_exact(a * a, a), a);
    EXPECT_THROW(divide_exact(SPoly::var(3), a), std::domain_error);
    EXPECT_THROW(try_divide(a, SPoly()), std::domain_error);
}

TEST(MinorTable, MatchesLeibniz) {
    std::mt19937_64 rng(32);
    std::vector<int> vars{2, 3};
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::vector<SPoly>> m(4, std::vector<SPoly>(5));
        for (auto& row : m)
            for (auto& e : row) e = random_poly(rng, vars, 2, 1);
        MinorTable t(m);
        for_each_subset(5, 4, [&](std::uint64_t cmask) {
            std::vector<std::vector<SPoly>> sub(4);
            for (int i = 0; i < 4; ++i)
                for (int c = 0; c < 5; ++c)
                    if (cmask >> c & 1) sub[i].push_back(m[i][c]);
            EXPECT_EQ(t.minor(0xF, cmask), leibniz(sub));
        });
    }
}

TEST(MinorTable, SubsetEnumeration) {
    int count = 0;
    for_each_subset(6, 3, [&](std::uint64_t m) {
        EXPECT_EQ(__builtin_popcountll(m), 3);
        ++count;
    });
    EXPECT_EQ(count, 20);
    count = 0;
    for_each_subset(3, 4, [&](std::uint64_t) { ++count; });
    EXPECT_EQ(count, 0);
}

TEST(Echelon, RankOfProducts) {
    std::mt19937_64 rng(33);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int r = 1; r <= 4; ++r) {
        std::vector<std::vector<Rational>> a(6, std::vector<Rational>(r)), b(r, std::vector<Rational>(7));
        for (auto& row : a)
            for (auto& x : row) x = Rational(d(rng));
        for (auto& row : b)
            for (auto& x : row) x = Rational(d(rng));
        std::vector<std::vector<Rational>> m(6, std::vector<Rational>(7)), mt(7, std::vector<Rational>(6));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 7; ++j) {
                for (int l = 0; l < r; ++l) m[i][j] += a[i][l] * b[l][j];
                mt[j][i] = m[i][j];
            }
        EXPECT_LE(rank(m), static_cast<std::size_t>(r));
        EXPECT_EQ(rank(m), rank(mt));
    }
}

TEST(Echelon, CanonicalRemainder) {
    Echelon e;
    SparseVec r1{{0, Rational(2)}, {3, Rational(1)}}, r2{{1, Rational(1)}, {3, Rational(-1)}};
    EXPECT_TRUE(e.insert(r1));
    EXPECT_TRUE(e.insert(r2));
    EXPECT_FALSE(e.insert({{0, Rational(4)}, {1, Rational(3)}, {3, Rational(-1)}}));
    SparseVec v{{0, Rational(1)}, {2, Rational(5)}};
    SparseVec w{{0, Rational(1) + Rational(6)}, {1, Rational(-2)}, {2, Rational(5)}, {3, Rational(5)}};
    EXPECT_EQ(e.reduce(v), e.reduce(w));
    for (auto& [i, c] : e.reduce(v)) EXPECT_FALSE(e.has_pivot(i));
}
