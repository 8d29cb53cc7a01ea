#include "mks/strata.hpp"

#include <gtest/gtest.h>

using namespace mks;

namespace {

struct SixThirteen {
    CurveFamily fam{6, 13};
    KSAlgebra L = lie_algebra_C(fam);
    GeneratorMatrix gm{fam, L.generators};
    Filtration filt{fam, 6};
};

const SixThirteen& env() {
    static SixThirteen e;
    return e;
}

const StrataReport& report613() {
    static StrataReport r = [] {
        StrataOptions o;
        o.a = 6;
        return stratum_equations(env().fam, env().L.generators, o);
    }();
    return r;
}

EVector ev(std::vector<int> u, std::vector<int> v) { return {std::move(u), std::move(v)}; }

SPoly discriminant() {
    SPoly s2 = SPoly::var(2), s3 = SPoly::var(3), s4 = SPoly::var(4);
    return s3 * s3 * Rational(9) - s2 * s4 * Rational(8) + s2 * s2 * s2 * Rational(116, 39);
}

bool proportional(const SPoly& a, const SPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return (a - b * (a.leading().c / b.leading().c)).is_zero();
}

int count_monomials_below(const CurveFamily& f, int degree) {
    int c = 0;
    for (int i = 0; f.k() * i < degree; ++i)
        for (int j = 0; f.k() * i + f.n() * j < degree; ++j) ++c;
    return c;
}

}  // namespace

TEST(Strata, FiltrationSixThirteen) {
    auto& f = env().filt;
    EXPECT_EQ(f.rho, 2);
    EXPECT_EQ(f.cols[0], (std::vector<int>{2, 3, 4}));
    EXPECT_EQ(f.cols[1], (std::vector<int>{2, 3, 4, 9, 10}));
    EXPECT_EQ(f.cols[2], env().fam.I_C());
    EXPECT_EQ(f.theta, (std::vector<int>{10, 4, -2}));
}

TEST(Strata, FiltrationInvariants) {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{3, 7}, {4, 9}, {5, 11}, {6, 13}, {7, 15}}) {
        CurveFamily fam(k, n);
        for (int a = 0; a <= k; ++a) {
            Filtration f(fam, a);
            EXPECT_EQ(f.cols.back(), fam.I_C());
            EXPECT_LE(f.theta.back(), 0);
            if (f.rho > 0) EXPECT_LT(a + (f.rho - 1) * k, fam.varpi());
        }
        EXPECT_THROW(Filtration(fam, -1), std::invalid_argument);
        EXPECT_THROW(Filtration(fam, k + 1), std::invalid_argument);
    }
}

TEST(Strata, WitnessClassification) {
    auto& e = env();
    EXPECT_EQ(classify(e.gm, e.filt, {}), ev({0, 0, 0}, {0, 0, 0}));
    EXPECT_EQ(classify(e.gm, e.filt, {{2, Rational(1)}}), ev({1, 3, 4}, {1, 3, 4}));
    EXPECT_EQ(classify(e.gm, e.filt, {{4, Rational(1)}}), ev({1, 2, 3}, {1, 2, 3}));
    EXPECT_EQ(classify(e.gm, e.filt, {{10, Rational(1)}}), ev({0, 1, 2}, {0, 1, 2}));
    EXPECT_EQ(classify(e.gm, e.filt, {{16, Rational(1)}}), ev({0, 0, 1}, {0, 0, 1}));
}

// With the kernel field of order 7, s_9 = 1 has rows 9 ∂_9 (Euler) and 9 ∂_16 (order 7),
// landing in the class of s_10 = 1. Dropping the s_9 ∂_16 term would give (0,1,1;0,0,1).
TEST(Strata, NinthCoordinateWitness) {
    auto& e = env();
    Point p{{9, Rational(1)}};
    EXPECT_EQ(classify(e.gm, e.filt, p), ev({0, 1, 2}, {0, 1, 2}));
    auto gens = e.L.generators;
    for (auto& g : gens)
        if (g.order == 7) g.field.set(16, SPoly());
    GeneratorMatrix truncated(e.fam, gens);
    EXPECT_EQ(classify(truncated, e.filt, p), ev({0, 1, 1}, {0, 0, 1}));
}

TEST(Strata, EVectorShape) {
    auto& e = env();
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = point_rng(21, i);
        EVector x = classify(e.gm, e.filt, random_point(rng, e.fam.I_C()));
        ASSERT_EQ(x.u.size(), 3u);
        EXPECT_TRUE(std::is_sorted(x.u.begin(), x.u.end()));
        EXPECT_TRUE(std::is_sorted(x.v.begin(), x.v.end()));
        EXPECT_EQ(x.u.back(), x.v.back());
    }
}

TEST(Strata, TjurinaValues) {
    auto& e = env();
    EXPECT_EQ(tjurina(e.fam, e.gm, {}), 50);
    EXPECT_EQ(tjurina(e.fam, e.gm, {{2, Rational(1)}}), 46);
    EXPECT_EQ(tjurina(e.fam, e.gm, {{2, Rational(-3, 2)}, {9, Rational(5)}}), 46);
}

// Off the discriminant the orbit has dimension 4, so the Tjurina number is mu_hat - 4.
TEST(Strata, TjurinaOnGenericLocus) {
    auto& e = env();
    SPoly D = discriminant();
    int seen = 0;
    for (std::uint64_t i = 0; seen < 20; ++i) {
        auto rng = point_rng(22, i);
        Point p = random_point(rng, e.fam.I_C(), false);
        if (D.eval(p).is_zero()) continue;
        ++seen;
        EXPECT_EQ(tjurina(e.fam, e.gm, p), 46);
    }
}

TEST(Strata, TjurinaRoutesAgree) {
    auto& e = env();
    for (std::uint64_t i = 0; i < 60; ++i) {
        auto rng = point_rng(23, i);
        Point p = random_point(rng, e.fam.I_C());
        EXPECT_EQ(tjurina_direct(e.fam, e.fam.I_C(), p), tjurina_orbit(e.fam, e.gm, p)) << i;
    }
}

TEST(Strata, TjurinaRejectsForeignCoordinate) {
    auto& e = env();
    EXPECT_THROW(tjurina_direct(e.fam, e.fam.I_C(), {{1, Rational(1)}}), std::invalid_argument);
}

TEST(Strata, HilbertIdentities) {
    auto& e = env();
    for (std::uint64_t i = 0; i < 40; ++i) {
        auto rng = point_rng(24, i);
        Point p = random_point(rng, e.fam.I_C());
        PointIdeal I(e.fam, e.fam.I_C(), p);
        auto h = hilbert_function(e.fam, I, e.filt);
        EVector x = classify(e.gm, e.filt, p);
        for (int j = 0; j <= e.filt.rho; ++j) {
            EXPECT_EQ(x.u[j], h.mu1[j] - h.tau1[j]) << i << " level " << j;
            EXPECT_EQ(x.v[j], h.mu2[j] - h.tau2[j]) << i << " level " << j;
        }
        EXPECT_EQ(h.tau2.back(), I.tau());
    }
}

TEST(Strata, HilbertExtremes) {
    auto& e = env();
    std::vector<Point> pts = {{}, {{2, Rational(1)}}, {{4, Rational(2)}, {16, Rational(-1)}}};
    int ceiling = std::min(e.fam.k() * (e.fam.n() - 1), e.fam.n() * (e.fam.k() - 1));
    for (auto& p : pts) {
        PointIdeal I(e.fam, e.fam.I_C(), p);
        EXPECT_EQ(hilbert_tau1(e.fam, I, 6, 40), I.tau());
        for (int m = 0; 6 + m * e.fam.k() <= ceiling; ++m)
            EXPECT_EQ(hilbert_tau1(e.fam, I, 6, m), count_monomials_below(e.fam, 6 + m * e.fam.k())) << m;
    }
}

// Columns for products s_a s_b are pointwise combinations of the factor columns.
TEST(Strata, ProductColumnsAreRedundant) {
    auto& e = env();
    std::vector<int> C = e.fam.I_C();
    for (std::uint64_t i = 0; i < 30; ++i) {
        auto rng = point_rng(25, i);
        Point p = random_point(rng, C);
        for (int j = 0; j <= e.filt.rho; ++j) {
            std::vector<int> cols = e.filt.cols[j];
            std::vector<std::vector<Rational>> m;
            for (auto& g : e.L.generators) {
                std::vector<Rational> row;
                for (int s : cols) row.push_back(g.field.component(s).eval(p));
                for (int a : cols)
                    for (int b : cols) row.push_back(g.field.apply(SPoly::var(a) * SPoly::var(b)).eval(p));
                m.push_back(row);
            }
            EXPECT_EQ(static_cast<int>(rank(m)), classify(e.gm, e.filt, p).u[j]);
        }
    }
}

TEST(Strata, SixThirteenObservedStrata) {
    auto& r = report613();
    std::set<EVector> seen;
    for (auto& s : r.strata) seen.insert(s.e);
    EXPECT_EQ(seen, (std::set<EVector>{ev({0, 0, 0}, {0, 0, 0}), ev({0, 0, 1}, {0, 0, 1}), ev({0, 1, 2}, {0, 1, 2}),
                                       ev({1, 2, 3}, {1, 2, 3}), ev({1, 3, 4}, {1, 3, 4})}));
}

TEST(Strata, GenericStratumBoundary) {
    auto& r = report613();
    auto it = std::find_if(r.strata.begin(), r.strata.end(), [](auto& s) { return s.e == ev({1, 3, 4}, {1, 3, 4}); });
    ASSERT_NE(it, r.strata.end());
    EXPECT_TRUE(proportional(it->boundary, discriminant())) << it->boundary.str();
    EXPECT_TRUE(it->equations.empty());
    EXPECT_EQ(it->orbit_dimension, 4);
    EXPECT_EQ(it->dimension, 6);
}

TEST(Strata, PartitionOfSamples) {
    auto& e = env();
    auto& r = report613();
    for (std::uint64_t i = 0; i < 1000; ++i) {
        auto rng = point_rng(26, i);
        Point p = random_point(rng, e.fam.I_C());
        int hits = 0;
        EVector x = classify(e.gm, e.filt, p);
        for (auto& s : r.strata)
            if (s.contains(p, e.gm)) {
                ++hits;
                EXPECT_EQ(s.e, x);
            }
        EXPECT_EQ(hits, 1) << i;
    }
}

TEST(Strata, WitnessesClassifyToTheirStratum) {
    auto& e = env();
    for (auto& s : report613().strata) {
        EXPECT_FALSE(s.witnesses.empty());
        for (auto& w : s.witnesses) {
            EXPECT_EQ(classify(e.gm, e.filt, w), s.e);
            EXPECT_TRUE(s.contains(w, e.gm));
        }
    }
}

TEST(Strata, DeterministicForSeed) {
    StrataOptions o;
    o.a = 6;
    o.samples = 300;
    o.seed = 5;
    auto a = stratum_equations(env().fam, env().L.generators, o);
    auto b = stratum_equations(env().fam, env().L.generators, o);
    ASSERT_EQ(a.strata.size(), b.strata.size());
    for (std::size_t i = 0; i < a.strata.size(); ++i) {
        EXPECT_EQ(a.strata[i].e, b.strata[i].e);
        EXPECT_EQ(a.strata[i].witnesses, b.strata[i].witnesses);
        EXPECT_EQ(a.strata[i].observed, b.strata[i].observed);
    }
}

TEST(Strata, TwoFiveSingleStratum) {
    CurveFamily f(2, 5);
    auto L = lie_algebra_C(f);
    StrataOptions o;
    o.a = 2;
    auto r = stratum_equations(f, L.generators, o);
    ASSERT_EQ(r.strata.size(), 1u);
    EXPECT_EQ(tjurina_direct(f, {}, {}), f.mu_hat());
}

TEST(Strata, SevenFifteenPartition) {
    CurveFamily f(7, 15);
    auto L = lie_algebra_C(f);
    StrataOptions o;
    o.a = 7;
    o.samples = 500;
    auto r = stratum_equations(f, L.generators, o);
    GeneratorMatrix gm(f, L.generators);
    Filtration fl(f, 7);
    EXPECT_GE(r.strata.size(), 5u);
    for (std::uint64_t i = 0; i < 200; ++i) {
        auto rng = point_rng(27, i);
        Point p = random_point(rng, f.I_C());
        int hits = 0;
        for (auto& s : r.strata) hits += s.contains(p, gm);
        EXPECT_EQ(hits, 1) << i;
    }
}
