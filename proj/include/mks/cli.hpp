#pragma once

#include "mks/flow.hpp"
#include "mks/graded_module.hpp"
#include "mks/ks_algebra.hpp"
#include "mks/milnor.hpp"
#include "mks/report.hpp"
#include "mks/strata.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mks::cli {

using report::json;

/// Malformed user input; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Options {
    bool json = false;
    int precision = 0;  // 0: the default formula
    std::uint64_t seed = 0;
    int samples = 2000;
    std::optional<int> a;  // defaults to k
};

struct Result {
    json doc;
    std::string text;
    int exit_code = 0;
};

inline CurveFamily family_of(int k, int n) {
    try {
        return CurveFamily(k, n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline int precision_of(const CurveFamily& fam, const Options& o) {
    if (o.precision < 0) throw UsageError("--precision must be positive");
    return o.precision > 0 ? o.precision : default_precision(fam);
}

inline int a_of(const CurveFamily& fam, const Options& o) {
    int a = o.a.value_or(fam.k());
    if (a < 0 || a > fam.k()) throw UsageError("--a must satisfy 0 <= a <= k");
    return a;
}

/// "C", "B", "D" or a comma-separated list of sigma values.
inline std::vector<int> parse_set(const CurveFamily& fam, const std::string& s) {
    if (s == "C") return fam.I_C();
    if (s == "B") return fam.I_B();
    if (s == "D") return fam.I_D();
    std::vector<int> A;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) A.push_back(report::parse_sigma(item));
    try {
        return fam.check_subset(A);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

inline Point parse_point_in(const std::vector<int>& A, const std::string& text) {
    Point p;
    try {
        p = report::parse_point(text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    for (auto& [s, v] : p)
        if (!std::binary_search(A.begin(), A.end(), s))
            throw UsageError("coordinate s_" + std::to_string(s) + " is not a parameter of the chosen set");
    return p;
}

inline json meta(const CurveFamily& fam, std::initializer_list<std::pair<const char*, json>> extra = {}) {
    json m = {{"k", fam.k()}, {"n", fam.n()}};
    for (auto& [key, v] : extra) m[key] = v;
    return m;
}

inline std::string point_str(const Point& p) {
    if (p.empty()) return "origin";
    std::string r;
    for (auto& [s, v] : p) r += (r.empty() ? "" : ",") + ("s_" + std::to_string(s)) + "=" + v.str();
    return r;
}

inline std::string join(const std::vector<int>& v) {
    std::string r;
    for (int x : v) r += (r.empty() ? "" : ",") + std::to_string(x);
    return "{" + r + "}";
}

// ---------------------------------------------------------------------------

inline Result cmd_family(int k, int n, const std::string& set) {
    CurveFamily fam = family_of(k, n);
    auto A = parse_set(fam, set);
    Result r;
    r.doc = report::envelope("family", meta(fam, {{"A", A}, {"set", set}}), report::to_json(fam, A));
    std::ostringstream os;
    os << "k=" << k << " n=" << n << "\n"
       << "I_B = " << join(fam.I_B()) << "\nI_C = " << join(fam.I_C()) << "\nI_D = " << join(fam.I_D()) << "\n"
       << "mu=" << fam.mu() << " mu_hat=" << fam.mu_hat() << " b=" << fam.b() << " omega=" << fam.omega()
       << " varpi=" << fam.varpi() << "\n"
       << "F = " << fam.deformation_poly(A).str(fam.grading()) << "\n";
    r.text = os.str();
    return r;
}

inline Result cmd_generators(int k, int n, const Options& o) {
    CurveFamily fam = family_of(k, n);
    int N = precision_of(fam, o);
    KSAlgebra L = lie_algebra_C(fam, N);
    auto d = derived_algebra(fam, L.generators);
    json gens = json::array();
    std::ostringstream os;
    for (auto& g : L.generators) {
        gens.push_back(report::to_json(g));
        os << g.label() << " = " << g.field.str() << "\n";
    }
    json derived = {{"closed", d.closed},
                    {"spans", d.spans},
                    {"euler_outside", d.euler_outside},
                    {"nilpotency_length", d.nilpotency_length}};
    os << "derived algebra: closed=" << d.closed << " spans=" << d.spans << " euler_outside=" << d.euler_outside
       << " nilpotency_length=" << d.nilpotency_length << "\n";
    Result r;
    r.doc = report::envelope("generators", meta(fam, {{"A", fam.I_C()}, {"precision", N}}),
                             {{"generators", gens}, {"derived", derived}});
    r.text = os.str();
    return r;
}

inline Result cmd_hgamma(int k, int n, int gamma, const std::string& set, const Options& o) {
    CurveFamily fam = family_of(k, n);
    auto A = parse_set(fam, set);
    if (gamma < 1 || gamma > k - 1) throw UsageError("gamma must satisfy 1 <= gamma <= k-1");
    int N = precision_of(fam, o);
    SRing ring{fam.omega()};
    ConormalParam<SRing> param(fam, fam.terms(A), ring, std::max(N, required_precision(fam, fam.omega())));
    auto H = compute_H(param, gamma, fam.kn() + fam.omega());
    MilnorReducer<SRing> red(fam, fam.terms(A), ring, fam.omega());
    auto nf = red.reduce(H);
    bool nf_zero = std::all_of(nf.begin(), nf.end(), [](auto& c) { return c.is_zero(); });
    // The representative is unique only modulo F, so the top case is tested against (F) + Jacobian.
    std::optional<bool> in_ideal;
    if (gamma == k - 1) {
        MilnorData<SRing> md(fam, A, ring, fam.omega());
        in_ideal = nf_zero || in_F_plus_jacobian(fam, md, H);
    }
    MPoly h = to_mpoly(H);
    Result r;
    r.doc = report::envelope(
        "hgamma", meta(fam, {{"A", A}, {"gamma", gamma}, {"precision", param.precision()}}),
        {{"gamma", gamma},
         {"degree", h_degree(fam, gamma)},
         {"truncation_degree", fam.kn() + fam.omega()},
         {"H", report::to_json(h, fam.grading())},
         {"normal_form_zero", nf_zero},
         {"in_F_plus_jacobian", in_ideal ? json(*in_ideal) : json(nullptr)}});
    r.text = "H^" + std::to_string(gamma) + " = " + h.str(fam.grading()) + "\n" +
             "degree " + std::to_string(h_degree(fam, gamma)) + (nf_zero ? ", in the Jacobian ideal" : "") +
             (in_ideal ? (*in_ideal ? ", in (F) + Jacobian ideal" : ", NOT in (F) + Jacobian ideal") : "") + "\n";
    return r;
}

inline Result cmd_classify(int k, int n, const std::string& point, const Options& o) {
    CurveFamily fam = family_of(k, n);
    Point p = parse_point_in(fam.I_C(), point);
    int N = precision_of(fam, o);
    int a = a_of(fam, o);
    KSAlgebra L = lie_algebra_C(fam, N);
    GeneratorMatrix gm(fam, L.generators);
    Filtration f(fam, a);
    EVector e = classify(gm, f, p);
    PointIdeal I(fam, fam.I_C(), p, N);
    int tau = I.tau(), tau_orbit = tjurina_orbit(fam, gm, p);
    if (tau != tau_orbit)
        throw InvariantBreach("tjurina routes disagree: " + std::to_string(tau) + " vs " + std::to_string(tau_orbit));
    auto h = hilbert_function(fam, I, f);
    Result r;
    r.doc = report::envelope("classify", meta(fam, {{"A", fam.I_C()}, {"a", a}, {"precision", N}}),
                             {{"point", report::to_json(p)},
                              {"filtration", report::to_json(f)},
                              {"e", report::to_json(e)},
                              {"tau", tau},
                              {"hilbert", report::to_json(h)}});
    std::ostringstream os;
    os << "point " << point_str(p) << "\ne = " << e.str() << "\ntau = " << tau << "\nhilbert tau1 = " << join(h.tau1)
       << " tau2 = " << join(h.tau2) << "\n";
    r.text = os.str();
    return r;
}

inline Result cmd_tjurina(int k, int n, const std::string& point, const std::string& set, const Options& o) {
    CurveFamily fam = family_of(k, n);
    auto A = parse_set(fam, set);
    Point p = parse_point_in(A, point);
    int N = precision_of(fam, o);
    int tau = tjurina_direct(fam, A, p, N);
    json payload = {{"point", report::to_json(p)}, {"tau", tau}};
    bool inC = std::all_of(p.begin(), p.end(), [&](auto& kv) {
        return std::binary_search(fam.I_C().begin(), fam.I_C().end(), kv.first);
    });
    if (inC) {
        KSAlgebra L = lie_algebra_C(fam, N);
        GeneratorMatrix gm(fam, L.generators);
        int t2 = tjurina_orbit(fam, gm, p);
        if (t2 != tau)
            throw InvariantBreach("tjurina routes disagree: " + std::to_string(tau) + " vs " + std::to_string(t2));
        payload["tau_orbit"] = t2;
    }
    Result r;
    r.doc = report::envelope("tjurina", meta(fam, {{"A", A}, {"precision", N}}), payload);
    r.text = "tau = " + std::to_string(tau) + "\n";
    return r;
}

inline Result cmd_strata(int k, int n, const Options& o) {
    CurveFamily fam = family_of(k, n);
    int N = precision_of(fam, o);
    if (o.samples < 0) throw UsageError("--samples must be nonnegative");
    StrataOptions so;
    so.a = a_of(fam, o);
    so.samples = o.samples;
    so.seed = o.seed;
    KSAlgebra L = lie_algebra_C(fam, N);
    StrataEngine eng(fam, L.generators, so);
    StrataReport rep = eng.run();
    json strata = json::array();
    std::ostringstream os;
    bool complete = true;
    for (auto& s : rep.strata) {
        strata.push_back(report::to_json(s, eng.matrix()));
        complete = complete && s.complete;
        os << s.e.str() << "  observed " << s.observed << "  orbit dim " << s.orbit_dimension;
        if (s.dimension >= 0) os << "  dim " << s.dimension << "  moduli dim " << s.moduli_dimension;
        os << "\n";
        for (auto& q : s.equations) os << "    " << q.str() << " = 0\n";
        if (!s.boundary.is_constant()) os << "    " << s.boundary.str() << " != 0\n";
        if (!s.complete) os << "    (some rank conditions checked numerically only)\n";
        if (!s.witnesses.empty()) os << "    witness " << point_str(s.witnesses.front()) << "\n";
    }
    Result r;
    r.doc = report::envelope(
        "strata",
        meta(fam, {{"A", fam.I_C()}, {"a", so.a}, {"seed", o.seed}, {"samples", o.samples}, {"precision", N}}),
        {{"filtration", report::to_json(rep.filtration)},
         {"strata", strata},
         {"points", rep.points},
         {"observed", true},
         {"equations_complete", complete}});
    r.text = os.str();
    return r;
}

inline Result cmd_flow(int k, int n, const std::string& label, const std::string& time, const std::string& point,
                       const Options& o) {
    CurveFamily fam = family_of(k, n);
    Point p = parse_point_in(fam.I_C(), point);
    Rational t;
    try {
        t = Rational::parse(time);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    int N = precision_of(fam, o);
    KSAlgebra L = lie_algebra_C(fam, N);
    GeneratorMatrix gm(fam, L.generators);
    Filtration f(fam, a_of(fam, o));
    Point q;
    if (label == "scale") {
        if (t.is_zero()) throw UsageError("scale factor must be nonzero");
        q = scale(p, t);
    } else {
        auto it = std::find_if(L.generators.begin(), L.generators.end(), [&](auto& g) { return g.label() == label; });
        if (it == L.generators.end()) throw UsageError("unknown generator '" + label + "'");
        if (it->order <= 0) throw UsageError("the Euler field has no polynomial flow; use the label 'scale'");
        q = flow(it->field, p, t);
    }
    EVector e0 = classify(gm, f, p), e1 = classify(gm, f, q);
    int t0 = tjurina(fam, gm, p, N), t1 = tjurina(fam, gm, q, N);
    Result r;
    r.doc = report::envelope("flow", meta(fam, {{"A", fam.I_C()}, {"a", f.a}, {"precision", N}}),
                             {{"label", label},
                              {"time", report::to_json(t)},
                              {"point", report::to_json(p)},
                              {"image", report::to_json(q)},
                              {"e_before", report::to_json(e0)},
                              {"e_after", report::to_json(e1)},
                              {"tau_before", t0},
                              {"tau_after", t1},
                              {"invariants_unchanged", e0 == e1 && t0 == t1}});
    std::ostringstream os;
    os << point_str(p) << " -> " << point_str(q) << "\ne " << e0.str() << " -> " << e1.str() << "\ntau " << t0
       << " -> " << t1 << "\n";
    r.text = os.str();
    return r;
}

// ---------------------------------------------------------------------------
// Regression suite: reference values for (6,13) and (7,15).

struct Check {
    std::string name;
    bool pass = false;
    std::string expected, actual;
};

inline SPoly parse_spoly(const std::string& s) {
    MPoly m = MPoly::parse(s);
    std::vector<SPoly::Term> t;
    for (auto& [mono, c] : m.terms()) {
        if (mono.x || mono.y || mono.p) throw std::invalid_argument("parse_spoly: space variable in '" + s + "'");
        t.push_back({mono.s, c});
    }
    return SPoly::from_terms(std::move(t));
}

inline VectorField parse_field(std::initializer_list<std::pair<int, const char*>> comps) {
    VectorField::Components c;
    for (auto& [s, p] : comps) c[s] = parse_spoly(p);
    return VectorField(std::move(c));
}

/// a = c * b for some nonzero rational c.
inline bool proportional(const VectorField& a, const VectorField& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto& [s, pa] = *a.components().begin();
    SPoly pb = b.component(s);
    if (pb.is_zero()) return false;
    Rational c = pa.leading().c / pb.leading().c;
    VectorField d = a;
    d -= b * c;
    return d.is_zero();
}

inline bool proportional(const SPoly& a, const SPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return (a - b * (a.leading().c / b.leading().c)).is_zero();
}

inline std::vector<std::string> term_set(const MPoly& p, const Grading& g) {
    std::vector<std::string> r;
    for (auto& [m, c] : p.ordered(g)) r.push_back((c.is_one() ? "" : c.str() + "*") + m.str());
    std::sort(r.begin(), r.end());
    return r;
}

inline std::vector<Check> regression_checks(const Options& o) {
    std::vector<Check> out;
    auto add = [&](std::string name, bool pass, std::string exp, std::string act) {
        out.push_back({std::move(name), pass, std::move(exp), std::move(act)});
    };

    CurveFamily f6(6, 13), f7(7, 15);
    {
        MPoly ref = MPoly::parse("y^6 + x^13 + s_2*x^9*y^2 + s_3*x^7*y^3 + s_4*x^5*y^4 + s_9*x^8*y^3 + s_10*x^6*y^4 + s_16*x^7*y^4");
        MPoly got = f6.deformation_poly(f6.I_C());
        add("family (6,13) F_C", term_set(ref, f6.grading()) == term_set(got, f6.grading()),
            ref.str(f6.grading()), got.str(f6.grading()));
        MPoly ref7 = MPoly::parse(
            "y^7 + x^15 + s_2*x^11*y^2 + s_3*x^9*y^3 + s_4*x^7*y^4 + s_5*x^5*y^5 + s_10*x^10*y^3 + s_11*x^8*y^4 + "
            "s_12*x^6*y^5 + s_18*x^9*y^4 + s_19*x^7*y^5 + s_26*x^8*y^5");
        MPoly got7 = f7.deformation_poly(f7.I_C());
        add("family (7,15) F_C", term_set(ref7, f7.grading()) == term_set(got7, f7.grading()),
            ref7.str(f7.grading()), got7.str(f7.grading()));
    }
    {
        SRing ring;
        ConormalParam<SRing> par(f6, f6.terms(f6.I_C()), ring, required_precision(f6, f6.omega()));
        SPoly psi2 = par.psi(2);
        add("puiseux psi_2 = s_2/6", psi2 == parse_spoly("1/6*s_2"), "1/6*s_2", psi2.str());
        auto P = par.P();
        SPoly p7 = P[7], p9 = P[9];
        add("puiseux P leading -13/6 t^7", p7 == SPoly(Rational(-13, 6)), "-13/6", p7.str());
        SPoly want9 = psi2 * Rational(-5, 2);
        add("puiseux P t^9 coefficient -5/2 psi_2", p9 == want9, want9.str(), p9.str());
    }
    {
        SRing ring{f6.omega()};
        MilnorReducer<SRing> red(f6, f6.terms(f6.I_C()), ring, f6.omega());
        auto F = deformation_xy(f6, f6.terms(f6.I_C()), ring);
        auto nf = red.reduce(F, {0, 1});
        auto coord = [&](int i, int j) {
            return nf[red.column_of_basis(f6.basis_index({i, j}))] * Rational(-78);
        };
        SPoly c1 = coord(9, 3), c2 = coord(7, 4);
        add("milnor -78 y F_C at x^9y^3", c1 == parse_spoly("2*s_2"), "2*s_2", c1.str());
        add("milnor -78 y F_C at x^7y^4", c2 == parse_spoly("3*s_3"), "3*s_3", c2.str());
    }

    KSAlgebra L6 = lie_algebra_C(f6, o.precision);
    {
        std::vector<int> orders;
        for (auto& g : L6.generators) orders.push_back(g.order);
        add("generators (6,13) orders", orders == std::vector<int>{0, 6, 7, 12, 13, 14}, "{0,6,7,12,13,14}",
            join(orders));
        std::vector<std::pair<std::string, VectorField>> ref = {
            {"delta^0", VectorField::euler(f6.I_C())},
            {"delta^6", parse_field({{9, "3*s_3"}, {10, "4*s_4 - 58/39*s_2^2"}, {16, "10*s_10"}})},
            {"delta^7", parse_field({{9, "2*s_2"}, {10, "3*s_3"}})},
            {"delta^12", parse_field({{16, "4*s_4"}})},
            {"delta^13", parse_field({{16, "3*s_3"}})},
            {"delta^14", parse_field({{16, "2*s_2"}})},
        };
        std::vector<VectorField> listed_fields;
        for (auto& [label, field] : ref) {
            listed_fields.push_back(field);
            auto it = std::find_if(L6.generators.begin(), L6.generators.end(), [&](auto& g) { return g.label() == label; });
            std::string act = it == L6.generators.end() ? "missing" : it->field.str();
            add("generators (6,13) " + label, it != L6.generators.end() && proportional(it->field, field), field.str(),
                act);
        }
        bool eq = same_module(f6.I_C(), L6.generator_fields(), listed_fields, f6.varpi());
        add("generators (6,13) module equality", eq, "equal modules", eq ? "equal modules" : "modules differ");
        auto g6 = std::find_if(L6.generators.begin(), L6.generators.end(), [](auto& g) { return g.label() == "delta^6"; });
        SPoly c10 = g6 == L6.generators.end() ? SPoly{} : g6->field.component(10);
        add("generators (6,13) delta^6 at s_10", proportional(c10, parse_spoly("4*s_4 - 58/39*s_2^2")),
            "4*s_4 - 58/39*s_2^2", c10.str());
    }
    {
        KSAlgebra L7 = lie_algebra_C(f7, o.precision);
        std::vector<VectorField> o15;
        for (auto& g : L7.generators)
            if (g.order == 15) o15.push_back(g.field);
        add("generators (7,15) two order-15 generators", o15.size() == 2, "2", std::to_string(o15.size()));
        bool lead = false;
        std::string act = "missing";
        if (!o15.empty()) {
            const VectorField& d = o15.front();
            act = d.str();
            SPoly a18 = d.component(18), a19 = d.component(19);
            if (!a18.is_zero()) {
                Rational c = a18.coeff(SMonomial::var(3)) / Rational(3);
                lead = !c.is_zero() && a18 == parse_spoly("3*s_3") * c &&
                       a19.coeff(SMonomial::var(4)) == Rational(4) * c;
            }
        }
        add("generators (7,15) delta^15,1 leading terms", lead, "3*s_3*d_18 + 4*s_4*d_19 + ...", act);
    }
    {
        GeneratorMatrix gm(f6, L6.generators);
        Filtration fl(f6, 6);
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
        std::set<EVector> listed_e;
        for (auto& w : wit) {
            EVector e = classify(gm, fl, w.p);
            listed_e.insert(w.e);
            add("strata (6,13) a=6 witness " + std::string(w.name) + " " + point_str(w.p), e == w.e, w.e.str(), e.str());
        }
        StrataOptions so;
        so.a = 6;
        so.samples = o.samples;
        so.seed = o.seed;
        StrataEngine eng(f6, L6.generators, so);
        auto rep = eng.run();
        std::set<EVector> seen;
        std::string act;
        SPoly boundary;
        for (auto& s : rep.strata) {
            seen.insert(s.e);
            act += (act.empty() ? "" : " ") + s.e.str();
            if (s.e == EVector{{1, 3, 4}, {1, 3, 4}}) boundary = s.boundary;
        }
        std::string exp;
        for (auto& e : listed_e) exp += (exp.empty() ? "" : " ") + e.str();
        add("strata (6,13) a=6 observed e-vectors", seen == listed_e, exp, act);
        SPoly D = parse_spoly("9*s_3^2 - 8*s_2*s_4 + 116/39*s_2^3");
        add("strata (6,13) U_1 boundary", proportional(boundary, D), D.str(), boundary.str());
        int t0 = tjurina(f6, gm, {}, o.precision), t1 = tjurina(f6, gm, {{2, Rational(1)}}, o.precision);
        add("tjurina (6,13) origin", t0 == 50, "50", std::to_string(t0));
        add("tjurina (6,13) U_1 witness", t1 == 46, "46", std::to_string(t1));
    }
    return out;
}

inline Result cmd_verify(const Options& o) {
    auto checks = regression_checks(o);
    json arr = json::array();
    std::ostringstream os;
    int failed = 0;
    for (auto& c : checks) {
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
        if (!c.pass) ++failed;
        os << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.pass) os << "\n     expected " << c.expected << "\n     actual   " << c.actual;
        os << "\n";
    }
    os << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    Result r;
    r.doc = report::envelope("verify", {{"seed", o.seed}, {"samples", o.samples}},
                             {{"checks", arr}, {"passed", static_cast<int>(checks.size()) - failed}, {"failed", failed}});
    r.text = os.str();
    r.exit_code = failed ? 1 : 0;
    return r;
}

// ---------------------------------------------------------------------------

/// Parses the command line, runs one verb and prints its report. Returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kodaira-Spencer algebras and strata for deformations of y^k + x^n"};
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "Optional TOML/INI file with default option values");
    Options o;
    std::string seed_text;
    app.add_flag("--json", o.json, "Print the report as JSON");
    app.add_option("--precision", o.precision, "Parametrization precision (t-order)");
    app.add_option("--seed", o.seed, "Seed for sampling");
    app.add_option("--samples", o.samples, "Number of random sample points");
    int a = -1;
    auto* aopt = app.add_option("--a", a, "Filtration parameter, 0 <= a <= k (default k)");

    int k = 0, n = 0, gamma = 0;
    std::string set = "C", point, label, time;
    auto kn = [&](CLI::App* s) {
        s->add_option("k", k, "k")->required();
        s->add_option("n", n, "n")->required();
        s->fallthrough();
    };
    auto* family = app.add_subcommand("family", "Index sets, invariants and F_A");
    kn(family);
    family->add_option("set", set, "C, B, D or a comma-separated list of sigma");
    auto* generators = app.add_subcommand("generators", "Generators of the Lie algebra over C");
    kn(generators);
    auto* hgamma = app.add_subcommand("hgamma", "The polynomial H^gamma");
    kn(hgamma);
    hgamma->add_option("gamma", gamma, "gamma")->required();
    hgamma->add_option("--set", set, "Parameter set (default C)");
    auto* classify_cmd = app.add_subcommand("classify", "e-vector, Tjurina number and Hilbert function of a point");
    kn(classify_cmd);
    classify_cmd->add_option("point", point, "Point such as s_9=1,s_2=-1/3 (empty for the origin)");
    auto* strata = app.add_subcommand("strata", "Observed strata with equations and witnesses");
    kn(strata);
    auto* tjurina_cmd = app.add_subcommand("tjurina", "Microlocal Tjurina number of a point");
    kn(tjurina_cmd);
    tjurina_cmd->add_option("point", point, "Point");
    tjurina_cmd->add_option("--set", set, "Parameter set (default C)");
    auto* flow_cmd = app.add_subcommand("flow", "Exact flow of a generator (or 'scale') applied to a point");
    kn(flow_cmd);
    flow_cmd->add_option("label", label, "Generator label such as delta^7, or scale")->required();
    flow_cmd->add_option("time", time, "Rational time (scale factor for 'scale')")->required();
    flow_cmd->add_option("point", point, "Point");
    auto* verify = app.add_subcommand("verify", "Regression suite on the (6,13) and (7,15) reference values");
    verify->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    if (*aopt) o.a = a;

    try {
        Result r;
        if (*family) r = cmd_family(k, n, set);
        else if (*generators) r = cmd_generators(k, n, o);
        else if (*hgamma) r = cmd_hgamma(k, n, gamma, set, o);
        else if (*classify_cmd) r = cmd_classify(k, n, point, o);
        else if (*strata) r = cmd_strata(k, n, o);
        else if (*tjurina_cmd) r = cmd_tjurina(k, n, point, set, o);
        else if (*flow_cmd) r = cmd_flow(k, n, label, time, point, o);
        else r = cmd_verify(o);
        if (o.json) out << r.doc.dump(2) << "\n";
        else out << r.text;
        return r.exit_code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const PrecisionError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace mks::cli
