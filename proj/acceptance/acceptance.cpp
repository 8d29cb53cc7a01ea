// Acceptance suite: one line per criterion, exit status 1 when any criterion fails.

#include "mks/cli.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace mks;
using cli::parse_field;
using cli::parse_spoly;
using cli::proportional;

namespace {

using Family = std::pair<int, int>;
const std::vector<Family> kList = {{2, 5}, {3, 7}, {4, 9}, {5, 11}, {6, 13}, {7, 15}};

struct Verdict {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fam_str(int k, int n) { return "(" + std::to_string(k) + "," + std::to_string(n) + ")"; }

// Caches lie_algebra_C per family; the families must outlive the algebras.
const KSAlgebra& algebra(int k, int n) {
    static std::map<Family, std::unique_ptr<CurveFamily>> fams;
    static std::map<Family, std::unique_ptr<KSAlgebra>> cache;
    Family key{k, n};
    if (!cache.count(key)) {
        fams[key] = std::make_unique<CurveFamily>(k, n);
        cache[key] = std::make_unique<KSAlgebra>(lie_algebra_C(*fams[key]));
    }
    return *cache[key];
}

const Generator* by_label(const KSAlgebra& L, const std::string& label) {
    for (auto& g : L.generators)
        if (g.label() == label) return &g;
    return nullptr;
}

XYPoly<SPoly> restrict_coeffs(const XYPoly<SPoly>& h, const std::vector<int>& zero) {
    XYPoly<SPoly> r;
    for (auto& [e, c] : h) {
        std::vector<SPoly::Term> keep;
        for (auto& t : c.terms()) {
            bool dead = false;
            for (int s : zero) dead = dead || t.m.exponent(s) > 0;
            if (!dead) keep.push_back(t);
        }
        SPoly q = SPoly::from_terms(std::move(keep));
        if (!q.is_zero()) r[e] = q;
    }
    return r;
}

// ---------------------------------------------------------------------------

Verdict c1() {
    Verdict v;
    struct Case {
        int k, n;
        const char* expected;
    };
    for (auto c : {Case{6, 13, "y^6 + x^13 + s_2*x^9*y^2 + s_3*x^7*y^3 + s_4*x^5*y^4 + s_9*x^8*y^3 + s_10*x^6*y^4 + s_16*x^7*y^4"},
                   Case{7, 15,
                        "y^7 + x^15 + s_2*x^11*y^2 + s_3*x^9*y^3 + s_4*x^7*y^4 + s_5*x^5*y^5 + s_10*x^10*y^3 + "
                        "s_11*x^8*y^4 + s_12*x^6*y^5 + s_18*x^9*y^4 + s_19*x^7*y^5 + s_26*x^8*y^5"}}) {
        auto t0 = std::chrono::steady_clock::now();
        auto r = cli::cmd_family(c.k, c.n, "C");
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        CurveFamily f(c.k, c.n);
        MPoly got = report::mpoly_from_json(r.doc.at("payload").at("F"));
        MPoly want = MPoly::parse(c.expected);
        v.require(cli::term_set(got, f.grading()) == cli::term_set(want, f.grading()), fam_str(c.k, c.n) + " term set differs");
        v.require(secs < 1.0, fam_str(c.k, c.n) + " took more than 1 s");
        v.note(fam_str(c.k, c.n) + " " + std::to_string(got.terms().size()) + " terms");
    }
    return v;
}

Verdict c2() {
    Verdict v;
    {
        CurveFamily f(6, 13);
        SRing ring;
        ConormalParam<SRing> par(f, f.terms(f.I_C()), ring, required_precision(f, f.omega()));
        v.require(par.psi(2) == parse_spoly("1/6*s_2"), "psi_2 = " + par.psi(2).str());
    }
    int checked = 0;
    for (auto [k, n] : std::vector<Family>{{2, 5}, {3, 7}, {4, 9}, {5, 11}, {6, 13}}) {
        CurveFamily f(k, n);
        SRing ring;
        int N = required_precision(f, f.omega());
        ConormalParam<SRing> par(f, f.terms(f.I_C()), ring, N);
        auto F = deformation_xy(f, f.terms(f.I_C()), ring);
        auto curve = par.eval(F);
        auto conormal = par.eval(partial_x<SRing>(F)) + par.P() * par.eval(partial_y<SRing>(F));
        for (int e = curve.lo(); e < N; ++e) v.require(curve[e].is_zero(), fam_str(k, n) + " F(X,Y) at t^" + std::to_string(e));
        for (int e = conormal.lo(); e < N - n; ++e)
            v.require(conormal[e].is_zero(), fam_str(k, n) + " conormal identity at t^" + std::to_string(e));
        ++checked;
    }
    v.note("psi_2 = s_2/6; F(X,Y) = 0 to precision and F_x + P F_y = 0 to precision - n for " + std::to_string(checked) +
           " families over C");
    return v;
}

Verdict c3() {
    Verdict v;
    CurveFamily f(6, 13);
    auto t0 = std::chrono::steady_clock::now();
    KSAlgebra L = lie_algebra_C(f);
    std::vector<int> orders;
    for (auto& g : L.generators) {
        orders.push_back(g.order);
        v.require(g.field.order() == std::optional<int>(g.order), g.label() + " not homogeneous");
    }
    v.require(orders == std::vector<int>{0, 6, 7, 12, 13, 14}, "orders " + cli::join(orders));
    std::vector<std::pair<std::string, VectorField>> expected = {
        {"delta^0", VectorField::euler(f.I_C())},
        {"delta^6", parse_field({{9, "3*s_3"}, {10, "4*s_4 - 58/39*s_2^2"}, {16, "10*s_10"}})},
        {"delta^7", parse_field({{9, "2*s_2"}, {10, "3*s_3"}})},
        {"delta^12", parse_field({{16, "4*s_4"}})},
        {"delta^13", parse_field({{16, "3*s_3"}})},
        {"delta^14", parse_field({{16, "2*s_2"}})},
    };
    std::vector<VectorField> listed;
    for (auto& [label, field] : expected) {
        listed.push_back(field);
        const Generator* g = by_label(L, label);
        v.require(g && proportional(g->field, field),
                  label + " is " + (g ? g->field.str() : std::string("missing")) + ", listed " + field.str());
    }
    v.require(same_module(f.I_C(), L.generator_fields(), listed, f.varpi()), "module equality fails");
    const Generator* d6 = by_label(L, "delta^6");
    v.require(d6 && proportional(d6->field.component(10), parse_spoly("4*s_4 - 58/39*s_2^2")), "delta^6 at s_10");
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < 60, "runtime above 60 s");
    return v;
}

Verdict c4() {
    Verdict v;
    int total = 0;
    for (auto [k, n] : kList) {
        auto& L = algebra(k, n);
        GradedModule rows = L.row_module();
        for (auto& g : L.generators) {
            ++total;
            v.require(ks_map(rows, g.field).is_zero(), fam_str(k, n) + " " + g.label());
        }
    }
    v.note(std::to_string(total) + " generators over 6 families");
    return v;
}

Verdict c5() {
    Verdict v;
    for (auto [k, n] : kList) {
        CurveFamily f(k, n);
        std::string tag = fam_str(k, n);
        // (1) every KS field over C is homogeneous of order alpha
        for (auto& fl : algebra(k, n).fields) {
            v.require(fl.alpha == row_order(f, fl.gamma, fl.ell), tag + " alpha mismatch");
            if (!fl.field.is_zero()) v.require(fl.field.order() == std::optional<int>(fl.alpha), tag + " inhomogeneous field");
        }
        // (2), (6) from the constant parts over B
        KSAlgebra P(f, f.I_B(), f.omega(), false, 0);
        for (auto& fl : P.fields) {
            bool expect = fl.gamma >= 1 && fl.ell.i <= fl.gamma - 1 && fl.gamma + fl.ell.j <= k - 2;
            v.require(!fl.field.is_zero() == expect, tag + " constant term pattern");
        }
        std::vector<int> pivots;
        for (auto& [sg, field] : P.basis.pivots) pivots.push_back(sg);
        v.require(pivots == f.I_BminusC(), tag + " constant pivots " + cli::join(pivots));
        // (3) fields of order above omega vanish
        if (k <= 5) {
            SRing ring{f.omega()};
            MilnorData<SRing> md(f, f.I_B(), ring, f.omega());
            for (auto& fl : ks_fields(f, *md.reducer, md.rows(1 << 20)))
                if (fl.alpha > f.omega()) v.require(fl.field.is_zero(), tag + " nonzero field above omega");
        }
        for (auto& fl : algebra(k, n).fields)
            if (fl.alpha > f.omega()) v.require(fl.field.is_zero(), tag + " nonzero field above omega over C");
        // (5) partials above varpi lie in L_B
        if (k >= 3 && k <= 6) {
            KSAlgebra B(f, f.I_B(), f.omega(), false, f.omega() - f.varpi() - 1);
            GradedModule rows = B.row_module();
            for (int sg : f.I_B())
                if (sg > f.varpi()) v.require(ks_map(rows, VectorField::partial(sg)).is_zero(), tag + " d_" + std::to_string(sg));
        } else {
            // Constant pivots at every sigma > varpi give d_sigma modulo higher partials; induct downward.
            for (int sg : f.I_B())
                if (sg > f.varpi()) v.require(P.basis.pivots.count(sg) == 1, tag + " no pivot at " + std::to_string(sg));
        }
    }
    v.note("(5) by exact row-module membership for k = 3..6, by pivot induction for (2,5) and (7,15); "
           "(3) over B for k <= 5, over C for all");
    return v;
}

Verdict c6() {
    Verdict v;
    for (auto [k, n] : std::vector<Family>{{3, 7}, {4, 9}, {5, 11}, {6, 13}}) {
        CurveFamily f(k, n);
        std::string tag = fam_str(k, n);
        SRing ring{f.omega()};
        MilnorData<SRing> C(f, f.I_C(), ring, f.omega());
        for (int g = 1; g <= k - 1; ++g) {
            auto H = compute_H(*C.param, g, f.kn() + f.omega());
            MPoly h = to_mpoly(H);
            if (!h.is_zero())
                v.require(h.weighted_degree(f.grading()) == g * (n - k) + k * n - k,
                          tag + " H^" + std::to_string(g) + " degree");
        }
        int T = required_precision(f, f.omega());
        ConormalParam<SRing> a(f, f.terms(f.I_C()), ring, T), b(f, f.terms(f.I_C()), ring, T + k);
        for (int g = 1; g <= k - 1; ++g)
            v.require(compute_H(a, g, f.kn() + f.omega()) == compute_H(b, g, f.kn() + f.omega()),
                      tag + " H^" + std::to_string(g) + " changes under T -> T+k");
        auto top = compute_H(*C.param, k - 1, f.kn() + f.omega());
        v.require(in_F_plus_jacobian(f, C, top), tag + " H^{k-1} not in (F) + Jacobian over C");
        if (k <= 5) {
            MilnorData<SRing> B(f, f.I_B(), ring, f.omega());
            for (int g = 1; g <= k - 2; ++g)
                v.require(restrict_coeffs(B.H[g], f.I_BminusC()) == C.H[g], tag + " restriction of H^" + std::to_string(g));
            auto topB = compute_H(*B.param, k - 1, f.kn() + f.omega());
            v.require(in_F_plus_jacobian(f, B, topB), tag + " H^{k-1} not in (F) + Jacobian over B");
        }
    }
    v.note("top H checked modulo (F) + Jacobian (plain Jacobian normal form vanishes for k <= 4); "
           "families (3,7)..(6,13) over C, restriction and B up to (5,11)");
    return v;
}

Verdict c7() {
    Verdict v;
    CurveFamily f(6, 13);
    auto t0 = std::chrono::steady_clock::now();
    auto& L = algebra(6, 13);
    GeneratorMatrix gm(f, L.generators);
    Filtration fl(f, 6);
    struct W {
        const char* name;
        Point p;
        EVector e;
    };
    std::vector<W> wit = {
        {"U_1", {{2, Rational(1)}}, {{1, 3, 4}, {1, 3, 4}}},
        {"U_2", {{4, Rational(1)}}, {{1, 2, 3}, {1, 2, 3}}},
        {"U_3", {{10, Rational(1)}}, {{0, 1, 2}, {0, 1, 2}}},
        {"U_4", {{9, Rational(1)}}, {{0, 1, 1}, {0, 0, 1}}},
        {"U_5", {{16, Rational(1)}}, {{0, 0, 1}, {0, 0, 1}}},
        {"U_6", {}, {{0, 0, 0}, {0, 0, 0}}},
    };
    std::set<EVector> listed;
    for (auto& w : wit) {
        listed.insert(w.e);
        EVector e = classify(gm, fl, w.p);
        v.require(e == w.e, std::string(w.name) + " witness gives " + e.str() + ", listed " + w.e.str());
    }
    StrataOptions so;
    so.a = 6;
    StrataEngine eng(f, L.generators, so);
    auto rep = eng.run();
    std::set<EVector> seen;
    SPoly boundary;
    for (auto& s : rep.strata) {
        seen.insert(s.e);
        if (s.e == wit[0].e) boundary = s.boundary;
    }
    std::string got;
    for (auto& e : seen) got += (got.empty() ? "" : " ") + e.str();
    v.require(seen == listed, "observed " + std::to_string(seen.size()) + " e-vectors: " + got);
    v.require(proportional(boundary, parse_spoly("9*s_3^2 - 8*s_2*s_4 + 116/39*s_2^3")), "U_1 boundary " + boundary.str());
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < 120, "runtime above 120 s");
    return v;
}

Verdict c8() {
    Verdict v;
    CurveFamily f(6, 13);
    GeneratorMatrix gm(f, algebra(6, 13).generators);
    Filtration fl(f, 6);
    const EVector generic{{1, 3, 4}, {1, 3, 4}};
    int points = 0, generic_points = 0;
    for (std::uint64_t i = 0; i < 60; ++i) {
        auto rng = point_rng(8, i);
        Point p = random_point(rng, f.I_C());
        int direct = tjurina_direct(f, f.I_C(), p), orbit = tjurina_orbit(f, gm, p);
        v.require(direct == orbit, "routes disagree at point " + std::to_string(i));
        ++points;
        if (classify(gm, fl, p) == generic) {
            ++generic_points;
            v.require(direct == 46, "U_1 point " + std::to_string(i) + " has tau " + std::to_string(direct));
        }
    }
    int t0 = tjurina_direct(f, f.I_C(), {}), t1 = tjurina_direct(f, f.I_C(), {{2, Rational(1)}});
    v.require(t0 == 50, "origin tau " + std::to_string(t0));
    v.require(t1 == 46, "U_1 witness tau " + std::to_string(t1));
    v.note(std::to_string(points) + " points, " + std::to_string(generic_points) + " in U_1");
    return v;
}

Verdict c9() {
    Verdict v;
    CurveFamily f(6, 13);
    auto& L = algebra(6, 13);
    GeneratorMatrix gm(f, L.generators);
    Filtration fl(f, 6);
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto rng = point_rng(9, i);
        Point p = random_point(rng, f.I_C());
        EVector e0 = classify(gm, fl, p);
        int t0 = tjurina_orbit(f, gm, p);
        for (auto& g : L.generators) {
            if (g.order == 0) continue;
            for (Rational t : {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2)}) {
                Point q = flow(g.field, p, t);
                v.require(classify(gm, fl, q) == e0 && tjurina_orbit(f, gm, q) == t0, g.label() + " changes invariants");
                v.require(flow(g.field, q, -t) == p, g.label() + " does not invert");
            }
        }
        for (Rational l : {Rational(2), Rational(-1), Rational(3, 5)}) {
            Point q = scale(p, l);
            v.require(classify(gm, fl, q) == e0 && tjurina_orbit(f, gm, q) == t0, "scale changes invariants");
        }
    }
    v.note("20 points, 5 generators, 5 times, 3 scalings");
    return v;
}

Verdict c10() {
    Verdict v;
    CurveFamily f(6, 13);
    auto P = pivot_algebra_B(f);
    std::set<int> C(f.I_C().begin(), f.I_C().end());
    for (std::uint64_t i = 0; i < 20; ++i) {
        auto rng = point_rng(10, i);
        Point b = random_point(rng, f.I_B());
        Point c = rectify_to_C(f, P.basis.pivots, b);
        for (auto& [s, x] : c) v.require(C.count(s) == 1, "image leaves C^C at point " + std::to_string(i));
        v.require(tjurina_direct(f, f.I_B(), b) == tjurina_direct(f, f.I_C(), c), "tau changes at point " + std::to_string(i));
    }
    v.note("20 points of C^B");
    return v;
}

Verdict c11() {
    Verdict v;
    auto& L = algebra(7, 15);
    std::vector<const Generator*> o15;
    for (auto& g : L.generators)
        if (g.order == 15) o15.push_back(&g);
    v.require(o15.size() == 2, std::to_string(o15.size()) + " order-15 generators");
    if (o15.size() == 2) {
        v.require(!proportional(o15[0]->field, o15[1]->field), "order-15 generators are dependent");
        const VectorField& d = o15[0]->field;
        Rational c = d.component(18).coeff(SMonomial::var(3)) / Rational(3);
        v.require(!c.is_zero() && d.component(18) == parse_spoly("3*s_3") * c &&
                      d.component(19).coeff(SMonomial::var(4)) == Rational(4) * c,
                  "leading terms of " + o15[0]->label() + ": " + d.str());
    }
    return v;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Verdict()> run;
    };
    std::vector<Criterion> all = {
        {1, "F_C reproduction", c1},
        {2, "parametrization and psi_2", c2},
        {3, "Lie algebra generators for (6,13)", c3},
        {4, "kernel certification", c4},
        {5, "KS field properties", c5},
        {6, "H^gamma checks", c6},
        {7, "stratification of (6,13), a=6", c7},
        {8, "Tjurina cross-check", c8},
        {9, "flow invariance", c9},
        {10, "rectification", c10},
        {11, "order-15 generators for (7,15)", c11},
    };
    int failed = 0;
    for (auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !v.pass;
        std::printf("%s %2d [PRIMARY] %s (%.1f s)%s%s\n", v.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    v.detail.empty() ? "" : ": ", v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", all.size() - failed, all.size());
    return failed ? 1 : 0;
}
