#pragma once

#include "mks/family.hpp"
#include "mks/flow.hpp"
#include "mks/ks_algebra.hpp"
#include "mks/mpoly.hpp"
#include "mks/strata.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace mks::report {

using json = nlohmann::json;

inline constexpr const char* kSchema = "1";

inline json to_json(const Rational& q) { return q.str(); }

inline Rational rational_from_json(const json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string");
    return Rational::parse(j.get<std::string>());
}

inline json exponents(const SMonomial& m) {
    json e = json::object();
    for (auto [s, x] : m.factors()) e["s_" + std::to_string(s)] = x;
    return e;
}

/// {"text": canonical string, "terms": [{"coeff": "p/q", "exp": {"s_2": 1}}]}, leading term first.
inline json to_json(const SPoly& p) {
    json terms = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
        terms.push_back({{"coeff", to_json(it->c)}, {"exp", exponents(it->m)}});
    return {{"text", p.str()}, {"terms", terms}};
}

inline int parse_sigma(const std::string& name) {
    std::string s = name.rfind("s_", 0) == 0 ? name.substr(2) : name;
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw std::invalid_argument("bad parameter name '" + name + "'");
    int v = std::stoi(s);
    if (v <= 0) throw std::invalid_argument("parameter index must be positive: '" + name + "'");
    return v;
}

inline SPoly spoly_from_json(const json& j) {
    std::vector<SPoly::Term> terms;
    for (auto& t : j.at("terms")) {
        SMonomial m;
        for (auto& [name, e] : t.at("exp").items()) m = m * SMonomial::var(parse_sigma(name), e.get<int>());
        terms.push_back({m, rational_from_json(t.at("coeff"))});
    }
    return SPoly::from_terms(std::move(terms));
}

inline json to_json(const MPoly& p, const Grading& g) {
    json terms = json::array();
    for (auto& [m, c] : p.ordered(g)) {
        json e = exponents(m.s);
        if (m.x) e["x"] = m.x;
        if (m.y) e["y"] = m.y;
        if (m.p) e["p"] = m.p;
        terms.push_back({{"coeff", to_json(c)}, {"exp", e}});
    }
    return {{"text", p.str(g)}, {"terms", terms}};
}

inline MPoly mpoly_from_json(const json& j) {
    MPoly r;
    for (auto& t : j.at("terms")) {
        Monomial m;
        for (auto& [name, e] : t.at("exp").items()) {
            int x = e.get<int>();
            if (name == "x") m.x = x;
            else if (name == "y") m.y = x;
            else if (name == "p") m.p = x;
            else m.s = m.s * SMonomial::var(parse_sigma(name), x);
        }
        r += MPoly(m, rational_from_json(t.at("coeff")));
    }
    return r;
}

inline json to_json(const Point& p) {
    json o = json::object();
    for (auto& [s, v] : p)
        if (!v.is_zero()) o["s_" + std::to_string(s)] = to_json(v);
    return o;
}

inline Point point_from_json(const json& j) {
    Point p;
    for (auto& [name, v] : j.items()) p[parse_sigma(name)] = rational_from_json(v);
    return prune(p);
}

/// Parses "s_9=1,s_2=-3/4" (the prefix s_ is optional); omitted coordinates are zero.
inline Point parse_point(const std::string& text) {
    Point p;
    std::size_t pos = 0;
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty() || t == "0" || t == "origin") return p;
    while (pos <= t.size()) {
        std::size_t comma = t.find(',', pos);
        std::string item = t.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("point entry '" + item + "' must look like s_9=1");
        int s = parse_sigma(item.substr(0, eq));
        if (p.count(s)) throw std::invalid_argument("coordinate s_" + std::to_string(s) + " given twice");
        p[s] = Rational::parse(item.substr(eq + 1));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return prune(p);
}

inline json to_json(const VectorField& f) {
    json c = json::object();
    for (auto& [s, p] : f.components()) c["s_" + std::to_string(s)] = to_json(p);
    json o = {{"text", f.str()}, {"components", c}};
    if (auto ord = f.order()) o["order"] = *ord;
    return o;
}

inline VectorField field_from_json(const json& j) {
    VectorField::Components c;
    for (auto& [name, p] : j.at("components").items()) c[parse_sigma(name)] = spoly_from_json(p);
    return VectorField(std::move(c));
}

inline json to_json(const Generator& g) {
    json o = to_json(g.field);
    o["label"] = g.label();
    o["order"] = g.order;
    return o;
}

inline json to_json(const EVector& e) { return {{"u", e.u}, {"v", e.v}, {"text", e.str()}}; }

inline EVector evector_from_json(const json& j) { return {j.at("u").get<std::vector<int>>(), j.at("v").get<std::vector<int>>()}; }

inline json to_json(const Filtration& f) {
    json cols = json::array();
    for (auto& c : f.cols) cols.push_back(c);
    return {{"a", f.a}, {"rho", f.rho}, {"columns", cols}, {"theta", f.theta}};
}

inline json to_json(const HilbertFunction& h) {
    return {{"tau1", h.tau1}, {"tau2", h.tau2}, {"mu1", h.mu1}, {"mu2", h.mu2}};
}

inline json to_json(const CurveFamily& fam, const std::vector<int>& A) {
    json pts = json::array();
    for (int s : fam.check_subset(A)) {
        auto e = fam.point_of(s);
        pts.push_back({{"sigma", s}, {"i", e.i}, {"j", e.j}});
    }
    return {{"k", fam.k()},
            {"n", fam.n()},
            {"I_B", fam.I_B()},
            {"I_C", fam.I_C()},
            {"I_D", fam.I_D()},
            {"A", fam.check_subset(A)},
            {"monomials", pts},
            {"mu", fam.mu()},
            {"mu_hat", fam.mu_hat()},
            {"b", fam.b()},
            {"omega", fam.omega()},
            {"varpi", fam.varpi()},
            {"F", to_json(fam.deformation_poly(A), fam.grading())}};
}

inline json to_json(const RankCondition& c, const GeneratorMatrix& gm) {
    json rows = json::array(), cols = json::array();
    for (int r = 0; r < gm.rows(); ++r)
        if (c.block.rows >> r & 1) rows.push_back(gm.labels()[r]);
    for (std::size_t q = 0; q < gm.columns().size(); ++q)
        if (c.block.cols >> q & 1) cols.push_back("s_" + std::to_string(gm.columns()[q]));
    json o = {{"rows", rows}, {"columns", cols}, {"rank", c.rank}, {"symbolic", c.symbolic}};
    if (c.symbolic) {
        json nz = json::array();
        for (auto& q : c.nonzero) nz.push_back(q.str());
        o["nonvanishing_minors"] = nz;
        o["gcd"] = c.gcd.str();
    }
    return o;
}

inline json to_json(const Stratum& s, const GeneratorMatrix& gm) {
    json eqs = json::array(), open = json::array(), wit = json::array();
    for (auto& q : s.equations) eqs.push_back(q.str());
    for (auto& c : s.open) open.push_back(to_json(c, gm));
    for (auto& c : s.numeric) open.push_back(to_json(c, gm));
    for (auto& w : s.witnesses) wit.push_back(to_json(w));
    json o = {{"e", to_json(s.e)},
              {"equations", eqs},
              {"open_conditions", open},
              {"boundary", s.boundary.str()},
              {"witnesses", wit},
              {"observed", s.observed},
              {"complete", s.complete},
              {"orbit_dimension", s.orbit_dimension}};
    o["dimension"] = s.dimension >= 0 ? json(s.dimension) : json(nullptr);
    o["moduli_dimension"] = s.dimension >= 0 ? json(s.moduli_dimension) : json(nullptr);
    return o;
}

/// Envelope shared by every command.
inline json envelope(const std::string& command, json meta, json payload) {
    return {{"schema", kSchema}, {"command", command}, {"meta", std::move(meta)}, {"payload", std::move(payload)}};
}

}  // namespace mks::report
