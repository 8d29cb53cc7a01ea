#include "mks/ks_algebra.hpp"
#include "mks/milnor.hpp"
#include "mks/strata.hpp"

#include <gtest/gtest.h>

using namespace mks;

namespace {

using Vec = std::vector<SPoly>;

bool all_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](auto& c) { return c.is_zero(); });
}

SPoly kill(const SPoly& p, const std::vector<int>& zero) {
    std::vector<SPoly::Term> keep;
    for (auto& t : p.terms()) {
        bool dead = false;
        for (int s : zero) dead = dead || t.m.exponent(s) > 0;
        if (!dead) keep.push_back(t);
    }
    return SPoly::from_terms(std::move(keep));
}

SPoly coord(const CurveFamily& f, const MilnorReducer<SRing>& red, const Vec& nf, int i, int j) {
    return nf[red.column_of_basis(f.basis_index({i, j}))];
}

const std::vector<std::pair<int, int>> kSmall = {{3, 7}, {3, 8}, {4, 9}, {5, 11}};

}  // namespace

TEST(Milnor, UndeformedReductions) {
    CurveFamily f(6, 13);
    SRing ring;
    MilnorReducer<SRing> red(f, {}, ring, f.omega());
    XYPoly<SPoly> g;
    g[{12, 0}] = SPoly(1);
    EXPECT_TRUE(all_zero(red.reduce(g)));
    XYPoly<SPoly> one;
    one[{0, 0}] = SPoly(1);
    auto nf = red.reduce(one);
    for (std::size_t q = 0; q < nf.size(); ++q) EXPECT_EQ(nf[q], SPoly(red.columns()[q] == 0 ? 1 : 0));
}

// At s = 0 the Jacobian ideal is the monomial ideal (x^{n-1}, y^{k-1}).
TEST(Milnor, MonomialIdealOracleAtOrigin) {
    for (auto [k, n] : kSmall) {
        CurveFamily f(k, n);
        SRing ring;
        MilnorReducer<SRing> red(f, {}, ring, f.omega());
        for (int i = 0; i < 2 * n; ++i)
            for (int j = 0; j < 2 * k; ++j) {
                if (f.degree({i, j}) > red.degree_bound()) continue;
                auto nf = red.monomial({i, j});
                if (i <= n - 2 && j <= k - 2) {
                    int col = red.column_of_basis(f.basis_index({i, j}));
                    for (std::size_t q = 0; q < nf.size(); ++q) EXPECT_EQ(nf[q], SPoly(static_cast<int>(q) == col ? 1 : 0));
                } else {
                    EXPECT_TRUE(all_zero(nf)) << i << "," << j;
                }
            }
    }
}

TEST(Milnor, YTimesFSixThirteen) {
    CurveFamily f(6, 13);
    SRing ring{f.omega()};
    MilnorReducer<SRing> red(f, f.terms(f.I_C()), ring, f.omega());
    auto nf = red.reduce(deformation_xy(f, f.terms(f.I_C()), ring), {0, 1});
    EXPECT_EQ(coord(f, red, nf, 9, 3) * Rational(-78), SPoly::var(2) * Rational(2));
    EXPECT_EQ(coord(f, red, nf, 7, 4) * Rational(-78), SPoly::var(3) * Rational(3));
}

TEST(Milnor, EulerIdentity) {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{3, 7}, {4, 9}, {5, 11}, {6, 13}}) {
        CurveFamily f(k, n);
        for (auto A : {f.I_C(), f.I_B()}) {
            SRing ring{f.omega()};
            MilnorReducer<SRing> red(f, f.terms(A), ring, f.omega());
            auto nf = red.reduce(deformation_xy(f, f.terms(A), ring));
            for (std::size_t q = 0; q < nf.size(); ++q) {
                auto e = f.basis()[red.columns()[q]];
                int s = f.sigma(e);
                bool inA = std::binary_search(A.begin(), A.end(), s);
                EXPECT_EQ(nf[q], inA ? SPoly::var(s) * Rational(-s, k * n) : SPoly()) << k << "," << n << " col " << s;
            }
        }
    }
}

// The generators of the Jacobian ideal, times any monomial, reduce to zero.
TEST(Milnor, JacobianGeneratorsReduceToZero) {
    for (auto [k, n] : kSmall) {
        CurveFamily f(k, n);
        SRing ring{f.omega()};
        MilnorReducer<SRing> red(f, f.terms(f.I_B()), ring, f.omega());
        auto F = deformation_xy(f, f.terms(f.I_B()), ring);
        auto Fx = partial_x<SRing>(F), Fy = partial_y<SRing>(F);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= k; ++j) {
                EXPECT_TRUE(all_zero(red.reduce(Fx, {i, j}))) << k << "," << n << " x^" << i << "y^" << j;
                EXPECT_TRUE(all_zero(red.reduce(Fy, {i, j}))) << k << "," << n << " x^" << i << "y^" << j;
            }
    }
}

TEST(Milnor, JacobianGeneratorsAtRationalPoints) {
    CurveFamily f(6, 13);
    for (std::uint64_t idx = 0; idx < 5; ++idx) {
        auto rng = point_rng(7, idx);
        QRing ring{random_point(rng, f.I_B(), false)};
        MilnorReducer<QRing> red(f, f.terms(f.I_B()), ring, f.omega());
        auto F = deformation_xy(f, f.terms(f.I_B()), ring);
        auto Fx = partial_x<QRing>(F), Fy = partial_y<QRing>(F);
        for (int i = 0; i <= 4; ++i)
            for (int j = 0; j <= 3; ++j) {
                for (auto& c : red.reduce(Fx, {i, j})) EXPECT_TRUE(c.is_zero());
                for (auto& c : red.reduce(Fy, {i, j})) EXPECT_TRUE(c.is_zero());
            }
    }
}

TEST(Milnor, ReductionIsIdempotent) {
    CurveFamily f(5, 11);
    SRing ring{f.omega()};
    MilnorReducer<SRing> red(f, f.terms(f.I_B()), ring, f.omega());
    XYPoly<SPoly> g;
    g[{10, 3}] = SPoly::var(2);
    g[{12, 0}] = SPoly(1);
    g[{3, 4}] = SPoly::var(1) - SPoly(3);
    auto nf = red.reduce(g);
    XYPoly<SPoly> back;
    for (std::size_t q = 0; q < nf.size(); ++q)
        if (!nf[q].is_zero()) back[f.basis()[red.columns()[q]]] = nf[q];
    EXPECT_EQ(red.reduce(back), nf);
}

TEST(Milnor, HIsHomogeneousOfPredictedDegree) {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{3, 7}, {4, 9}, {5, 11}, {6, 13}}) {
        CurveFamily f(k, n);
        MilnorData<SRing> md(f, f.I_C(), SRing{f.omega()}, f.omega());
        for (int g = 1; g <= k - 2; ++g) {
            MPoly h = to_mpoly(md.H[g]);
            EXPECT_FALSE(h.is_zero());
            EXPECT_EQ(h.weighted_degree(f.grading()), h_degree(f, g)) << k << "," << n << " gamma " << g;
            EXPECT_EQ(h_degree(f, g), g * (n - k) + k * n - k);
            for (auto& [e, c] : md.H[g]) EXPECT_LT(e.j, k);
        }
    }
}

// Undeformed: p is a unit multiple of y/x on the conormal, so H^gamma is a single monomial.
TEST(Milnor, HAtOriginIsMonomial) {
    for (auto [k, n] : kSmall) {
        CurveFamily f(k, n);
        SRing ring;
        ConormalParam<SRing> par(f, {}, ring, default_precision(f));
        for (int g = 1; g <= k - 1; ++g) {
            auto H = compute_H(par, g, h_degree(f, g));
            ASSERT_EQ(H.size(), 1u) << k << "," << n << " gamma " << g;
            EXPECT_EQ(H.begin()->first.i, n - 1 - g);
            EXPECT_EQ(H.begin()->first.j, g);
            EXPECT_TRUE(H.begin()->second.is_constant());
            EXPECT_FALSE(H.begin()->second.is_zero());
        }
    }
}

TEST(Milnor, HStableUnderPrecision) {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{3, 7}, {4, 9}, {5, 11}, {6, 13}}) {
        CurveFamily f(k, n);
        SRing ring{f.omega()};
        int T = required_precision(f, f.omega());
        ConormalParam<SRing> a(f, f.terms(f.I_C()), ring, T), b(f, f.terms(f.I_C()), ring, T + k);
        for (int g = 1; g <= k - 1; ++g)
            EXPECT_EQ(compute_H(a, g, f.kn() + f.omega()), compute_H(b, g, f.kn() + f.omega()));
    }
}

TEST(Milnor, HPrecisionTooLowThrows) {
    CurveFamily f(5, 11);
    SRing ring;
    ConormalParam<SRing> par(f, f.terms(f.I_C()), ring, f.kn() + 5);
    EXPECT_THROW(compute_H(par, 2, f.kn() + f.omega()), PrecisionError);
}

TEST(Milnor, HRestrictionCompatibility) {
    for (auto [k, n] : kSmall) {
        CurveFamily f(k, n);
        MilnorData<SRing> B(f, f.I_B(), SRing{f.omega()}, f.omega()), C(f, f.I_C(), SRing{f.omega()}, f.omega());
        for (int g = 1; g <= k - 2; ++g) {
            XYPoly<SPoly> r;
            for (auto& [e, c] : B.H[g]) {
                SPoly q = kill(c, f.I_BminusC());
                if (!q.is_zero()) r[e] = q;
            }
            EXPECT_EQ(r, C.H[g]) << k << "," << n << " gamma " << g;
        }
    }
}

// The top representative is only determined modulo F, so it lies in (F) + ΔF.
TEST(Milnor, TopHLiesInFPlusJacobian) {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{3, 7}, {4, 9}, {5, 11}, {6, 13}}) {
        CurveFamily f(k, n);
        std::vector<std::vector<int>> sets = {f.I_C()};
        if (k <= 5) sets.push_back(f.I_B());
        for (auto& A : sets) {
            MilnorData<SRing> md(f, A, SRing{f.omega()}, f.omega());
            auto H = compute_H(*md.param, k - 1, f.kn() + f.omega());
            EXPECT_TRUE(in_F_plus_jacobian(f, md, H)) << k << "," << n << " |A|=" << A.size();
            if (k <= 4) EXPECT_TRUE(all_zero(md.reducer->reduce(H)));
        }
    }
}

TEST(Milnor, FPlusJacobianRejectsBasisMonomial) {
    CurveFamily f(5, 11);
    MilnorData<SRing> md(f, f.I_C(), SRing{f.omega()}, f.omega());
    XYPoly<SPoly> g;
    g[{0, 0}] = SPoly(1);
    EXPECT_FALSE(in_F_plus_jacobian(f, md, g));
    g.clear();
    g[{2, 1}] = SPoly(1);
    EXPECT_FALSE(in_F_plus_jacobian(f, md, g));
}

TEST(Milnor, SquaredMomentumIdentitySixThirteen) {
    CurveFamily f(6, 13);
    SRing ring;
    ConormalParam<SRing> par(f, f.terms(f.I_C()), ring, 110);
    auto P = par.P();
    auto lhs = P * P * par.xy_series(13, 0);
    auto rhs = par.xy_series(11, 2).scaled(Rational(169, 36)) + par.xy_series(7, 4).times_coeff(par.psi(2) * Rational(13, 9));
    auto d = lhs - rhs;
    for (int e = d.lo(); e <= 94; ++e) EXPECT_TRUE(d[e].is_zero()) << "t^" << e << ": " << d[e].str();
}

// (l+1) p^l f_x + l p^{l+1} f_y agrees with H^l on the conormal at s = 0.
TEST(Milnor, CrossIdentityAtOrigin) {
    for (auto [k, n] : kSmall) {
        CurveFamily f(k, n);
        SRing ring;
        int bound = f.kn() + f.omega();
        ConormalParam<SRing> par(f, {}, ring, default_precision(f));
        auto F = deformation_xy(f, {}, ring);
        auto fx = par.eval(partial_x<SRing>(F)), fy = par.eval(partial_y<SRing>(F));
        auto P = par.P();
        for (int l = 1; l <= k - 2; ++l) {
            auto Pl = P;
            for (int q = 1; q < l; ++q) Pl = Pl * P;
            auto lhs = (Pl * fx).scaled(Rational(l + 1)) + (Pl * P * fy).scaled(Rational(l));
            auto rhs = par.eval(compute_H(par, l, bound));
            auto d = lhs - rhs;
            for (int e = d.lo(); e <= bound && e < d.precision(); ++e) EXPECT_TRUE(d[e].is_zero()) << k << "," << n << " l=" << l;
        }
    }
}

TEST(Milnor, StructureConstantsHomogeneous) {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{4, 9}, {5, 11}, {6, 13}}) {
        CurveFamily f(k, n);
        MilnorData<SRing> md(f, f.I_C(), SRing{f.omega()}, f.omega());
        for (auto& row : md.rows(1 << 20)) {
            int base = f.degree(row.ell) + h_degree(f, row.gamma);
            for (std::size_t q = 0; q < row.entries.size(); ++q) {
                const SPoly& c = row.entries[q];
                if (c.is_zero()) continue;
                int w = f.degree(f.basis()[md.reducer->columns()[q]]) - base;
                EXPECT_TRUE(c.is_homogeneous());
                EXPECT_EQ(c.max_weight(), w);
            }
        }
    }
}

TEST(Milnor, EulerRowOfStructureConstants) {
    CurveFamily f(6, 13);
    MilnorData<SRing> md(f, f.I_C(), SRing{f.omega()}, f.omega());
    auto rows = md.rows(1 << 20);
    auto it = std::find_if(rows.begin(), rows.end(), [](auto& r) { return r.gamma == 0 && r.ell.i == 0 && r.ell.j == 0; });
    ASSERT_NE(it, rows.end());
    for (std::size_t q = 0; q < it->entries.size(); ++q) {
        int s = f.sigma(f.basis()[md.reducer->columns()[q]]);
        bool inC = std::count(f.I_C().begin(), f.I_C().end(), s);
        EXPECT_EQ(it->entries[q], inC ? SPoly::var(s) * Rational(-s, 78) : SPoly());
    }
}
