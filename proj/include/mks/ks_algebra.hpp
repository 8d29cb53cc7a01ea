#pragma once

#include "mks/family.hpp"
#include "mks/graded_module.hpp"
#include "mks/milnor.hpp"
#include "mks/vector_field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace mks {

/// delta_ell^gamma: the field sum_v c^gamma_{ell,v} ∂_{s_{sigma_v}} of one structure row.
struct KSField {
    int gamma = 0;
    LatticePoint ell;
    int alpha = 0;
    VectorField field;
};

/// Raised when some sigma in I_B \ I_C has no row with a constant pivot.
class MissingPivot : public std::runtime_error {
public:
    MissingPivot(int sigma, const std::string& detail)
        : std::runtime_error("no constant pivot for column " + std::to_string(sigma) + ": " + detail), sigma_(sigma) {}
    int sigma() const { return sigma_; }

private:
    int sigma_;
};

/// Raw fields from the structure rows (columns with sigma > 0 only).
inline std::vector<KSField> ks_fields(const CurveFamily& fam, const MilnorReducer<SRing>& red,
                                      const std::vector<StructureRow<SPoly>>& rows) {
    std::vector<KSField> out;
    for (auto& r : rows) {
        VectorField::Components c;
        for (std::size_t q = 0; q < r.entries.size(); ++q) {
            int s = fam.sigma(fam.basis()[red.columns()[q]]);
            if (s > 0 && !r.entries[q].is_zero()) c[s] = r.entries[q];
        }
        out.push_back({r.gamma, r.ell, r.alpha, VectorField(std::move(c))});
    }
    return out;
}

/// Result of Gaussian diagonalisation on the columns I_B \ I_C (up to the tracked bound).
struct KSBasis {
    std::map<int, VectorField> pivots;  // sigma -> ∂_sigma + eps_sigma, reduced on all pivot columns
    std::vector<KSField> core;          // zero on every pivot column
};

/// Pivots only on nonzero rational constants, columns in ascending order.
inline KSBasis echelonize(const CurveFamily& fam, std::vector<KSField> fields, int max_col) {
    KSBasis out;
    std::set<int> C(fam.I_C().begin(), fam.I_C().end());
    for (auto& f : fields) f.field = f.field.truncate_columns(max_col);
    std::vector<int> pivcols;
    for (int s : fam.I_B())
        if (!C.count(s) && s <= max_col) pivcols.push_back(s);
    for (int s : pivcols) {
        auto it = std::find_if(fields.begin(), fields.end(), [&](const KSField& f) {
            SPoly c = f.field.component(s);
            return f.alpha == s && !c.is_zero() && c.is_constant();
        });
        if (it == fields.end()) throw MissingPivot(s, "constant-term pattern violated or precision too low");
        VectorField piv = it->field * it->field.component(s).constant_term().inverse();
        fields.erase(it);
        auto eliminate = [&](VectorField& g) {
            SPoly c = g.component(s);
            if (!c.is_zero()) g -= piv.times(c);
        };
        for (auto& f : fields) eliminate(f.field);
        for (auto& [t, p] : out.pivots) eliminate(p);
        out.pivots.emplace(s, std::move(piv));
    }
    for (auto& f : fields)
        if (!f.field.is_zero()) out.core.push_back(std::move(f));
    return out;
}

/// A generator of the Lie algebra of the C-family, labelled delta^{order,index}.
struct Generator {
    int order = 0;
    int index = 1;
    VectorField field;
    std::string label() const { return "delta^" + std::to_string(order) + (index > 1 || multi ? "," + std::to_string(index) : ""); }
    bool multi = false;  // several generators share this order
};

namespace detail {

/// Scales so the leading term of the lowest-sigma component is sigma' * s_sigma' when it
/// is a single variable, and has coefficient 1 otherwise.
inline VectorField normalize_field(const VectorField& f) {
    if (f.is_zero()) return f;
    const SPoly& low = f.components().begin()->second;
    const auto& lt = low.leading();
    Rational want(1);
    if (lt.m.factors().size() == 1 && lt.m.factors()[0].second == 1) want = Rational(lt.m.factors()[0].first);
    return f * (want / lt.c);
}

/// Removes terms divisible by the monomial of a single-term generator.
inline VectorField tail_reduce(VectorField f, const std::vector<VectorField>& monomial_gens) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& h : monomial_gens) {
            auto& [s, hp] = *h.components().begin();
            const auto& ht = hp.terms().front();
            SPoly fc = f.component(s);
            for (auto& t : fc.terms()) {
                SMonomial q;
                if (SMonomial::divide(t.m, ht.m, q)) {
                    f -= h.times(SPoly(q, t.c / ht.c));
                    changed = true;
                    break;
                }
            }
            if (changed) break;
        }
    }
    return f;
}

inline bool is_monomial_field(const VectorField& f) {
    return f.components().size() == 1 && f.components().begin()->second.size() == 1;
}

}  // namespace detail

/// Generators of the kernel over Q[s_C]: core fields with s_{B\C} = 0, made minimal,
/// tail-reduced, echelonised within each order and normalised.
inline std::vector<Generator> restrict_to_C(const CurveFamily& fam, const KSBasis& basis) {
    auto bc = fam.I_BminusC();
    std::set<int> zero(bc.begin(), bc.end());
    std::vector<VectorField> cand;
    for (auto& f : basis.core) {
        VectorField g = f.field.restrict_zero(zero).truncate_columns(fam.varpi());
        if (!g.is_zero() && g.order()) cand.push_back(std::move(g));
    }
    auto mons = std::make_shared<MonomialCache>(fam.I_C());
    // minimality: drop a field lying in the module of the others, scanning from the back
    for (int i = static_cast<int>(cand.size()) - 1; i >= 0; --i) {
        std::vector<VectorField> others;
        int oi = *cand[i].order();
        for (int j = 0; j < static_cast<int>(cand.size()); ++j)
            if (j != i && *cand[j].order() >= oi) others.push_back(cand[j]);
        GradedModule m(mons, others, fam.varpi());
        if (m.contains(cand[i])) cand.erase(cand.begin() + i);
    }
    std::vector<VectorField> mono;
    for (auto& g : cand)
        if (detail::is_monomial_field(g)) mono.push_back(g);
    for (auto& g : cand)
        if (!detail::is_monomial_field(g)) g = detail::tail_reduce(g, mono);

    std::map<int, std::vector<VectorField>> by_order;
    for (auto& g : cand) by_order[*g.order()].push_back(g);
    std::vector<Generator> out;
    for (auto& [o, group] : by_order) {
        // echelon on coordinates (sigma ascending, then monomial ascending)
        std::vector<VectorField> rest = group, done;
        while (!rest.empty()) {
            auto lead = [](const VectorField& f) {
                auto& [s, p] = *f.components().begin();
                return std::make_pair(s, p.terms().front().m);
            };
            std::size_t best = 0;
            for (std::size_t i = 1; i < rest.size(); ++i)
                if (lead(rest[i]) < lead(rest[best])) best = i;
            VectorField piv = rest[best];
            rest.erase(rest.begin() + best);
            auto [s, m] = lead(piv);
            Rational pc = piv.component(s).coeff(m);
            for (auto& f : rest) {
                Rational c = f.component(s).coeff(m);
                if (!c.is_zero()) f.axpy(-c / pc, piv);
            }
            rest.erase(std::remove_if(rest.begin(), rest.end(), [](auto& f) { return f.is_zero(); }), rest.end());
            done.push_back(piv);
        }
        int idx = 1;
        for (auto& f : done) {
            Generator g{o, idx++, detail::normalize_field(f)};
            g.multi = done.size() > 1;
            out.push_back(std::move(g));
        }
    }
    return out;
}

/// Full pipeline for the Lie algebra of a family with parameter set A (C ⊆ A ⊆ B),
/// exact in all columns sigma <= max_col.
struct KSAlgebra {
    const CurveFamily* fam;
    std::vector<int> A;
    int max_col;
    std::unique_ptr<MilnorData<SRing>> milnor;
    std::vector<KSField> fields;
    KSBasis basis;
    std::vector<Generator> generators;  // only when A = C or the C-restriction was requested

    KSAlgebra(const CurveFamily& f, std::vector<int> A_, int max_col_, bool with_generators = true, int cap = -1,
              int precision = 0)
        : fam(&f), A(f.check_subset(std::move(A_))), max_col(max_col_) {
        SRing ring{cap >= 0 ? cap : max_col};
        milnor = std::make_unique<MilnorData<SRing>>(f, A, ring, max_col, precision);
        fields = ks_fields(f, *milnor->reducer, milnor->rows(max_col));
        basis = echelonize(f, fields, max_col);
        if (with_generators) generators = restrict_to_C(f, basis);
    }

    std::vector<VectorField> generator_fields() const {
        std::vector<VectorField> r;
        for (auto& g : generators) r.push_back(g.field);
        return r;
    }
    /// The module of all rows m_ell F, m_ell H^gamma as fields (columns <= max_col).
    GradedModule row_module() const {
        std::vector<VectorField> r;
        for (auto& f : fields) r.push_back(f.field);
        return GradedModule(A, r, max_col);
    }
};

/// Lie algebra of the C-family, columns up to varpi.
inline KSAlgebra lie_algebra_C(const CurveFamily& fam, int precision = 0) {
    return KSAlgebra(fam, fam.I_C(), fam.varpi(), true, -1, precision);
}

/// Pivot fields over B (columns up to varpi), as needed by rectify_to_C.
inline KSAlgebra pivot_algebra_B(const CurveFamily& fam, int precision = 0) {
    return KSAlgebra(fam, fam.I_B(), fam.varpi(), false, -1, precision);
}

/// Milnor coordinates as a field keyed by the sigma of each basis monomial (sigma may be <= 0).
inline VectorField milnor_field(const CurveFamily& fam, const MilnorReducer<SRing>& red, const std::vector<SPoly>& nf) {
    VectorField::Components c;
    for (std::size_t q = 0; q < nf.size(); ++q)
        if (!nf[q].is_zero()) c[fam.sigma(fam.basis()[red.columns()[q]])] = nf[q];
    return VectorField(std::move(c));
}

/// Whether g lies in (F_A) + ΔF_A, exactly in all tracked coordinates: its normal form
/// is tested against the Q[s_A]-span of the normal forms of m_ell F_A.
inline bool in_F_plus_jacobian(const CurveFamily& fam, const MilnorData<SRing>& md, const XYPoly<SPoly>& g) {
    std::vector<VectorField> rows;
    for (auto& ell : fam.basis()) rows.push_back(milnor_field(fam, *md.reducer, md.reducer->reduce(md.H[0], ell)));
    std::vector<int> A;
    for (auto& t : md.terms) A.push_back(t.sigma);
    GradedModule M(A, rows, md.colmax);
    return M.contains(milnor_field(fam, *md.reducer, md.reducer->reduce(g)));
}

/// Class of delta F_A modulo the microlocal ideal: the canonical remainder of
/// sum delta_sigma m_sigma modulo the row module. Components above varpi are dropped,
/// every ∂_sigma with sigma > varpi lying in the kernel.
struct KSMapResult {
    VectorField remainder;
    bool is_zero() const { return remainder.is_zero(); }
};

inline KSMapResult ks_map(GradedModule& rows, const VectorField& delta) { return {rows.remainder(delta)}; }

/// Generators of L = [L_C, L_C]: brackets with the Euler field and pairwise brackets.
struct DerivedAlgebra {
    std::vector<VectorField> brackets;
    std::vector<VectorField> generators;  // positive-order generators of L_C
    bool closed = false;           // every bracket lies in the positive-order module
    bool spans = false;            // every positive generator is a bracket multiple
    bool euler_outside = false;    // the Euler field is not in L
    int nilpotency_length = 0;     // first length at which iterated brackets vanish
};

inline DerivedAlgebra derived_algebra(const CurveFamily& fam, const std::vector<Generator>& gens) {
    DerivedAlgebra d;
    for (auto& g : gens)
        if (g.order > 0) d.generators.push_back(g.field);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            VectorField b = bracket(gens[i].field, gens[j].field);
            if (!b.is_zero()) d.brackets.push_back(b);
        }
    auto mons = std::make_shared<MonomialCache>(fam.I_C());
    GradedModule L(mons, d.generators, fam.varpi());
    d.closed = std::all_of(d.brackets.begin(), d.brackets.end(), [&](auto& b) { return L.contains(b); });
    GradedModule Lb(mons, d.brackets, fam.varpi());
    d.spans = std::all_of(d.generators.begin(), d.generators.end(), [&](auto& g) { return Lb.contains(g); });
    d.euler_outside = !L.contains(VectorField::euler(fam.I_C()));

    // lower central series on Q-spans of iterated brackets of positive generators
    std::vector<VectorField> level = d.generators;
    int len = 1;
    while (!level.empty() && len < 64) {
        IndexMap<std::pair<int, SMonomial>> coords;
        Echelon ech;
        std::vector<VectorField> next;
        for (auto& g : d.generators)
            for (auto& c : level) {
                VectorField b = bracket(g, c);
                if (b.is_zero()) continue;
                std::map<int, Rational> v;
                for (auto& [sg, p] : b.components())
                    for (auto& t : p.terms()) v[coords.id({sg, t.m})] += t.c;
                if (ech.insert(to_sparse(v))) next.push_back(std::move(b));
            }
        level = std::move(next);
        ++len;
    }
    d.nilpotency_length = len;
    return d;
}

}  // namespace mks
