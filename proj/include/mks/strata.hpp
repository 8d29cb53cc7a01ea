#pragma once

#include "mks/flow.hpp"
#include "mks/ks_algebra.hpp"
#include "mks/linalg.hpp"
#include "mks/milnor.hpp"
#include "mks/polygcd.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mks {

/// Two computations of the same invariant disagreed.
class InvariantBreach : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Levels j = 0..rho of the filtration attached to a, 0 <= a <= k.
struct Filtration {
    int a = 0;
    int rho = 0;
    std::vector<std::vector<int>> cols;  // Col_j: sigma in I_C with sigma <= a + jk
    std::vector<int> theta;              // row threshold varpi - a - jk

    Filtration(const CurveFamily& fam, int a_) : a(a_) {
        if (a < 0 || a > fam.k()) throw std::invalid_argument("a must satisfy 0 <= a <= k");
        while (a + rho * fam.k() < fam.varpi()) ++rho;
        for (int j = 0; j <= rho; ++j) {
            int top = a + j * fam.k();
            std::vector<int> c;
            for (int s : fam.I_C())
                if (s <= top) c.push_back(s);
            cols.push_back(std::move(c));
            theta.push_back(fam.varpi() - top);
        }
    }
    int levels() const { return rho + 1; }
};

struct EVector {
    std::vector<int> u, v;

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t j = 0; j < u.size(); ++j) os << (j ? "," : "") << u[j];
        os << ';';
        for (std::size_t j = 0; j < v.size(); ++j) os << (j ? "," : "") << v[j];
        os << ')';
        return os.str();
    }
    friend auto operator<=>(const EVector&, const EVector&) = default;
};

/// The matrix [delta(s_sigma)] of Lie algebra generators against the coordinates of C^C.
class GeneratorMatrix {
public:
    GeneratorMatrix(const CurveFamily& fam, const std::vector<Generator>& gens) : cols_(fam.I_C()) {
        for (auto& g : gens) {
            std::vector<SPoly> row;
            for (int s : cols_) row.push_back(g.field.component(s));
            entries_.push_back(std::move(row));
            orders_.push_back(g.order);
            labels_.push_back(g.label());
        }
    }

    int rows() const { return static_cast<int>(entries_.size()); }
    const std::vector<int>& columns() const { return cols_; }
    const std::vector<int>& orders() const { return orders_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<std::vector<SPoly>>& entries() const { return entries_; }

    std::vector<std::vector<Rational>> eval(const Point& p) const {
        std::vector<std::vector<Rational>> m;
        for (auto& row : entries_) {
            std::vector<Rational> r;
            for (auto& e : row) r.push_back(e.eval(p));
            m.push_back(std::move(r));
        }
        return m;
    }

    std::uint64_t column_mask(const std::vector<int>& sigmas) const {
        std::uint64_t m = 0;
        for (std::size_t c = 0; c < cols_.size(); ++c)
            if (std::find(sigmas.begin(), sigmas.end(), cols_[c]) != sigmas.end()) m |= std::uint64_t(1) << c;
        return m;
    }
    std::uint64_t row_mask(int min_order) const {
        std::uint64_t m = 0;
        for (std::size_t r = 0; r < orders_.size(); ++r)
            if (orders_[r] >= min_order) m |= std::uint64_t(1) << r;
        return m;
    }
    std::uint64_t all_rows() const { return row_mask(INT_MIN); }
    std::uint64_t all_columns() const { return cols_.empty() ? 0 : (~std::uint64_t(0) >> (64 - cols_.size())); }

private:
    std::vector<int> cols_;
    std::vector<std::vector<SPoly>> entries_;
    std::vector<int> orders_;
    std::vector<std::string> labels_;
};

inline std::size_t block_rank(const std::vector<std::vector<Rational>>& m, std::uint64_t rows, std::uint64_t cols) {
    Echelon e;
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (!(rows >> r & 1)) continue;
        SparseVec v;
        for (std::size_t c = 0; c < m[r].size(); ++c)
            if ((cols >> c & 1) && !m[r][c].is_zero()) v.emplace_back(static_cast<int>(c), m[r][c]);
        e.insert(v);
    }
    return e.rank();
}

/// A rank condition rank(block) = r on a submatrix of the generator matrix.
struct RankBlock {
    std::uint64_t rows = 0, cols = 0;
    friend auto operator<=>(const RankBlock&, const RankBlock&) = default;
};

/// The 2(rho+1) blocks whose ranks form the e-vector: u_j then v_j.
inline std::vector<RankBlock> evector_blocks(const GeneratorMatrix& gm, const Filtration& f) {
    std::vector<RankBlock> b;
    for (int j = 0; j <= f.rho; ++j) b.push_back({gm.all_rows(), gm.column_mask(f.cols[j])});
    for (int j = 0; j <= f.rho; ++j) b.push_back({gm.row_mask(f.theta[j]), gm.all_columns()});
    return b;
}

inline EVector classify(const GeneratorMatrix& gm, const Filtration& f, const Point& p) {
    auto m = gm.eval(p);
    auto blocks = evector_blocks(gm, f);
    EVector e;
    for (int j = 0; j <= f.rho; ++j) e.u.push_back(static_cast<int>(block_rank(m, blocks[j].rows, blocks[j].cols)));
    for (int j = 0; j <= f.rho; ++j)
        e.v.push_back(static_cast<int>(block_rank(m, blocks[f.rho + 1 + j].rows, blocks[f.rho + 1 + j].cols)));
    return e;
}

/// Rows m_ell F_t, m_ell H_t^gamma reduced in the Milnor basis at a rational point.
class PointIdeal {
public:
    PointIdeal(const CurveFamily& fam, const std::vector<int>& A, const Point& p, int precision = 0) : fam_(&fam) {
        for (auto& [s, v] : p)
            if (!v.is_zero() && !std::binary_search(A.begin(), A.end(), s))
                throw std::invalid_argument("coordinate s_" + std::to_string(s) + " is not a parameter of the family");
        MilnorData<QRing> md(fam, A, QRing{p}, fam.omega(), precision);
        const auto& cols = md.reducer->columns();
        if (static_cast<int>(cols.size()) != fam.mu()) throw std::logic_error("PointIdeal: Milnor basis not fully tracked");
        for (auto& r : md.rows(fam.omega())) {
            SparseVec v;
            for (std::size_t c = 0; c < r.entries.size(); ++c)
                if (!r.entries[c].is_zero()) v.emplace_back(cols[c], r.entries[c]);
            if (!v.empty()) rows_.push_back({r.alpha, std::move(v)});
        }
        sigma_.reserve(fam.basis().size());
        for (auto& e : fam.basis()) sigma_.push_back(fam.sigma(e));
    }

    /// mu minus the rank of all rows.
    int tau() const { return fam_->mu() - rank_if([](int) { return true; }, fam_->mu()); }

    /// dim of the quotient by the ideal plus all monomials with sigma >= bound.
    int tau_truncated(int bound) const {
        int below = static_cast<int>(std::lower_bound(sigma_.begin(), sigma_.end(), bound) - sigma_.begin());
        return below - rank_if([](int) { return true; }, below);
    }

    /// mu minus the rank of the rows with alpha >= threshold.
    int tau_filtered(int threshold) const {
        return fam_->mu() - rank_if([&](int alpha) { return alpha >= threshold; }, fam_->mu());
    }

private:
    template <class Pred>
    int rank_if(Pred keep, int colbound) const {
        Echelon e;
        for (auto& [alpha, v] : rows_) {
            if (!keep(alpha)) continue;
            SparseVec w;
            for (auto& x : v)
                if (x.first < colbound) w.push_back(x);
            e.insert(w);
        }
        return static_cast<int>(e.rank());
    }

    const CurveFamily* fam_;
    std::vector<std::pair<int, SparseVec>> rows_;
    std::vector<int> sigma_;
};

/// Microlocal Tjurina number by direct Milnor-basis rank.
inline int tjurina_direct(const CurveFamily& fam, const std::vector<int>& A, const Point& p, int precision = 0) {
    return PointIdeal(fam, fam.check_subset(A), p, precision).tau();
}

/// Microlocal Tjurina number from the orbit dimension: mu_hat - rank of the generator matrix.
inline int tjurina_orbit(const CurveFamily& fam, const GeneratorMatrix& gm, const Point& p) {
    auto m = gm.eval(p);
    return fam.mu_hat() - static_cast<int>(block_rank(m, gm.all_rows(), gm.all_columns()));
}

/// Both routes; throws InvariantBreach when they differ. Points must lie in C^C.
inline int tjurina(const CurveFamily& fam, const GeneratorMatrix& gm, const Point& p, int precision = 0) {
    int a = tjurina_direct(fam, fam.I_C(), p, precision);
    int b = tjurina_orbit(fam, gm, p);
    if (a != b)
        throw InvariantBreach("tjurina: Milnor-basis rank gives " + std::to_string(a) + ", orbit rank gives " +
                              std::to_string(b));
    return a;
}

struct HilbertFunction {
    std::vector<int> tau1, tau2;  // indexed by j, i.e. m = n + j
    std::vector<int> mu1, mu2;    // counting constants with u_j = mu1 - tau1, v_j = mu2 - tau2
};

inline HilbertFunction hilbert_function(const CurveFamily& fam, const PointIdeal& I, const Filtration& f) {
    HilbertFunction h;
    auto BmC = fam.I_BminusC();
    for (int j = 0; j <= f.rho; ++j) {
        int top = f.a + j * fam.k();
        h.tau1.push_back(I.tau_truncated(top));
        h.tau2.push_back(I.tau_filtered(f.theta[j]));
        int c1 = static_cast<int>(std::count_if(fam.I_C().begin(), fam.I_C().end(), [&](int s) { return s >= top; }));
        int c2 = static_cast<int>(std::count_if(BmC.begin(), BmC.end(), [&](int s) { return s >= f.theta[j]; }));
        h.mu1.push_back(fam.mu_hat() - c1);
        h.mu2.push_back(fam.mu() - c2);
    }
    return h;
}

/// tau1 at an arbitrary level m (monomials of weighted degree >= a + mk are killed).
inline int hilbert_tau1(const CurveFamily& fam, const PointIdeal& I, int a, int m) {
    return I.tau_truncated(a + m * fam.k() - fam.kn());
}

// ---------------------------------------------------------------------------
// Strata

/// Random rational point: each coordinate is zero with probability 1/2, otherwise p/q
/// with p in -9..9 and q in 1..9.
inline Point random_point(std::mt19937_64& rng, const std::vector<int>& vars, bool allow_zero = true) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9), coin(0, 1);
    Point p;
    for (int s : vars) {
        if (allow_zero && coin(rng)) continue;
        int a = num(rng);
        while (!allow_zero && a == 0) a = num(rng);
        if (a) p[s] = Rational(a, den(rng));
    }
    return p;
}

/// Generator for sample i of a run with the given seed.
inline std::mt19937_64 point_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

/// One rank condition of a stratum: every (r+1)-minor of the block vanishes and at
/// least one r-minor does not.
struct RankCondition {
    RankBlock block;
    int rank = 0;
    std::vector<SPoly> nonzero;  // r-minors after substituting the linear equations
    SPoly gcd;                   // their gcd, primitive
    bool symbolic = true;        // false: too many minors, checked by numeric rank only
};

struct Stratum {
    EVector e;
    std::vector<SPoly> equations;         // all vanish on the stratum
    std::vector<RankCondition> open;      // each needs one nonvanishing minor
    std::vector<RankCondition> numeric;   // rank conditions without symbolic minors
    bool complete = true;                 // equations describe the stratum on their own
    SPoly boundary;                       // lcm of the nonconstant gcds, 1 if none
    std::vector<Point> witnesses;
    std::size_t observed = 0;             // sample points classified here
    int dimension = -1;                   // estimated at the witnesses
    int orbit_dimension = 0;
    int moduli_dimension = -1;

    bool contains(const Point& p, const GeneratorMatrix& gm) const {
        if (!numeric.empty()) {
            auto m = gm.eval(p);
            for (auto& c : numeric)
                if (static_cast<int>(block_rank(m, c.block.rows, c.block.cols)) != c.rank) return false;
        }
        for (auto& q : equations)
            if (!q.eval(p).is_zero()) return false;
        for (auto& c : open)
            if (!c.nonzero.empty() &&
                std::none_of(c.nonzero.begin(), c.nonzero.end(), [&](auto& q) { return !q.eval(p).is_zero(); }))
                return false;
        return true;
    }
};

struct StrataOptions {
    int a = 0;
    int samples = 2000;
    std::uint64_t seed = 0;
    int witnesses = 3;
    int subspace_limit = 12;   // enumerate coordinate subspaces when #I_C <= limit
    int refine_rounds = 3;
    std::size_t minor_budget = 3000;  // largest family of k-minors expanded symbolically
};

struct StrataReport {
    Filtration filtration;
    std::vector<Stratum> strata;
    std::size_t points = 0;   // classified points, witnesses included
};

namespace detail {

inline bool simpler(const Point& a, const Point& b) {
    auto height = [](const Point& p) {
        mpz_class h = 0;
        for (auto& [s, v] : p) h = std::max({h, mpz_class(abs(v.num())), v.den()});
        return h;
    };
    if (a.size() != b.size()) return a.size() < b.size();
    auto ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    auto neg = [](const Point& p) { return std::count_if(p.begin(), p.end(), [](auto& x) { return x.second.sign() < 0; }); };
    if (neg(a) != neg(b)) return neg(a) < neg(b);
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](auto& x, auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
}

inline SPoly normalized(const SPoly& p) { return p.is_zero() ? p : primitive_integer(squarefree(p)); }

inline void insert_unique(std::vector<SPoly>& v, SPoly p) {
    if (p.is_zero()) return;
    if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(std::move(p));
}

inline std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::size_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
    return r;
}

inline std::size_t minor_count(const RankBlock& b, int r) {
    return binomial(std::popcount(b.rows), r) * binomial(std::popcount(b.cols), r);
}

inline std::vector<SPoly> minors_of(MinorTable& t, const RankBlock& b, int r) {
    std::vector<SPoly> out;
    int nr = std::popcount(b.rows), nc = std::popcount(b.cols);
    if (r > nr || r > nc) return out;
    std::vector<int> ri, ci;
    for (int i = 0; i < 64; ++i) {
        if (b.rows >> i & 1) ri.push_back(i);
        if (b.cols >> i & 1) ci.push_back(i);
    }
    for_each_subset(nr, r, [&](std::uint64_t rs) {
        std::uint64_t rm = 0;
        for (int i = 0; i < nr; ++i)
            if (rs >> i & 1) rm |= std::uint64_t(1) << ri[i];
        for_each_subset(nc, r, [&](std::uint64_t cs) {
            std::uint64_t cm = 0;
            for (int i = 0; i < nc; ++i)
                if (cs >> i & 1) cm |= std::uint64_t(1) << ci[i];
            insert_unique(out, normalized(t.minor(rm, cm)));
        });
    });
    return out;
}

/// Single-variable equations s_v are used to simplify everything else.
inline std::vector<SPoly> simplify_equations(std::vector<SPoly> eqs, std::set<int>& zero) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& q : eqs)
            if (q.size() == 1 && q.leading().m.factors().size() == 1) {
                int v = q.leading().m.factors()[0].first;
                if (zero.insert(v).second) changed = true;
            }
        std::vector<SPoly> next;
        for (auto& q : eqs) {
            SPoly r = q.restrict_zero(zero);
            if (r.is_zero()) continue;
            insert_unique(next, normalized(r));
        }
        eqs = std::move(next);
    }
    std::vector<SPoly> out;
    for (int v : zero) out.push_back(SPoly::var(v));
    for (auto& q : eqs)
        if (!(q.size() == 1 && q.leading().m.factors().size() == 1)) insert_unique(out, q);
    return out;
}

/// Maximal rank of the Jacobian of eqs at the given points.
inline int jacobian_rank(const std::vector<SPoly>& eqs, const std::vector<int>& vars, const std::vector<Point>& pts) {
    int best = 0;
    for (auto& p : pts) {
        std::vector<std::vector<Rational>> J;
        for (auto& q : eqs) {
            std::vector<Rational> row;
            for (int v : vars) row.push_back(q.derivative(v).eval(p));
            J.push_back(std::move(row));
        }
        best = std::max(best, static_cast<int>(rank(J)));
    }
    return best;
}

/// Points on {q = 0} inside coordinate subspaces, solving for a variable in which q is linear.
inline std::vector<Point> hypersurface_points(const SPoly& q, const std::vector<int>& vars, std::mt19937_64& rng,
                                              int per_var) {
    std::vector<Point> out;
    for (int v : q.variables()) {
        if (q.degree_in(v) != 1) continue;
        auto c = detail::as_univariate(q, v);
        for (int tries = 0; tries < per_var; ++tries) {
            Point p = random_point(rng, vars, tries > 0);
            p.erase(v);
            Rational lead = c[1].eval(p);
            if (lead.is_zero()) continue;
            p[v] = -c[0].eval(p) / lead;
            out.push_back(prune(p));
        }
    }
    return out;
}

}  // namespace detail

/// Observed flattening stratification of C^C by e-vectors, with minor equations.
class StrataEngine {
public:
    StrataEngine(const CurveFamily& fam, const std::vector<Generator>& gens, StrataOptions opt)
        : fam_(&fam), gm_(fam, gens), filt_(fam, opt.a), opt_(opt), minors_(gm_.entries()) {
        blocks_ = evector_blocks(gm_, filt_);
    }

    const GeneratorMatrix& matrix() const { return gm_; }
    const Filtration& filtration() const { return filt_; }

    EVector classify(const Point& p) const { return mks::classify(gm_, filt_, p); }

    StrataReport run() {
        const auto& vars = fam_->I_C();
        std::vector<Point> pts{Point{}};
        for (int i = 0; i < opt_.samples; ++i) {
            auto rng = point_rng(opt_.seed, static_cast<std::uint64_t>(i));
            pts.push_back(prune(random_point(rng, vars)));
        }
        if (static_cast<int>(vars.size()) <= opt_.subspace_limit) {
            std::uint64_t n = std::uint64_t(1) << vars.size();
            for (std::uint64_t s = 1; s < n; ++s) {
                Point ones, generic;
                auto rng = point_rng(opt_.seed ^ 0x5bd1e995ULL, s);
                for (std::size_t i = 0; i < vars.size(); ++i)
                    if (s >> i & 1) {
                        ones[vars[i]] = Rational(1);
                        generic[vars[i]] = random_point(rng, {vars[i]}, false).begin()->second;
                    }
                pts.push_back(ones);
                pts.push_back(generic);
            }
        }
        for (auto& p : pts) observe(p);

        // refine along the hypersurfaces cut out by the minors of realized strata
        std::set<std::string> tried;
        for (int round = 0; round < opt_.refine_rounds; ++round) {
            std::size_t before = by_e_.size();
            std::vector<SPoly> hyper;
            for (auto& [e, s] : by_e_) {
                Stratum st = build(e, s);
                for (auto& c : st.open)
                    for (auto& q : c.nonzero)
                        if (!q.is_constant()) detail::insert_unique(hyper, q);
            }
            std::uint64_t idx = 0;
            for (auto& q : hyper) {
                if (!tried.insert(q.str()).second) continue;
                auto rng = point_rng(opt_.seed ^ 0x9e3779b9ULL, idx++);
                for (auto& p : detail::hypersurface_points(q, vars, rng, 4)) observe(p);
            }
            if (by_e_.size() == before) break;
        }

        StrataReport rep{filt_, {}, 0};
        for (auto& [e, s] : by_e_) {
            rep.strata.push_back(build(e, s));
            rep.points += s.count;
        }
        return rep;
    }

private:
    struct Seen {
        std::size_t count = 0;
        std::vector<Point> witnesses;
    };

    void observe(const Point& p) {
        EVector e = classify(p);
        Seen& s = by_e_[e];
        ++s.count;
        auto pos = std::lower_bound(s.witnesses.begin(), s.witnesses.end(), p, detail::simpler);
        if (pos != s.witnesses.end() && *pos == p) return;
        s.witnesses.insert(pos, p);
        if (static_cast<int>(s.witnesses.size()) > opt_.witnesses) s.witnesses.pop_back();
    }

    Stratum build(const EVector& e, const Seen& seen) {
        Stratum st;
        st.e = e;
        st.observed = seen.count;
        st.witnesses = seen.witnesses;
        std::vector<int> ranks = e.u;
        ranks.insert(ranks.end(), e.v.begin(), e.v.end());

        std::map<RankBlock, int> conds;
        for (std::size_t i = 0; i < blocks_.size(); ++i) conds.emplace(blocks_[i], ranks[i]);
        std::vector<SPoly> eqs;
        std::set<RankBlock> numeric;
        for (auto& [b, r] : conds) {
            if (!affordable(b, r + 1) || !affordable(b, r)) {
                numeric.insert(b);
                st.numeric.push_back({b, r, {}, {}, false});
                continue;
            }
            for (auto& q : minors(b, r + 1)) detail::insert_unique(eqs, q);
        }
        st.complete = numeric.empty();
        std::set<int> zero;
        st.equations = detail::simplify_equations(std::move(eqs), zero);

        std::vector<SPoly> gcds;
        for (auto& [b, r] : conds) {
            if (r == 0 || numeric.count(b)) continue;
            RankCondition c{b, r, {}, {}, true};
            for (auto& q : minors(b, r)) detail::insert_unique(c.nonzero, detail::normalized(q.restrict_zero(zero)));
            if (c.nonzero.empty()) throw std::logic_error("stratum " + e.str() + " has no admissible minor");
            std::vector<const SPoly*> byside;
            for (auto& q : c.nonzero) byside.push_back(&q);
            std::sort(byside.begin(), byside.end(), [](auto* x, auto* y) { return x->size() < y->size(); });
            SPoly g = *byside.front();
            for (auto* q : byside) {
                if (g.is_constant()) break;
                g = poly_gcd(g, *q);
            }
            c.gcd = detail::normalized(g);
            if (!c.gcd.is_constant()) detail::insert_unique(gcds, c.gcd);
            st.open.push_back(std::move(c));
        }
        st.boundary = SPoly(1);
        for (auto& g : gcds) st.boundary = poly_lcm(st.boundary, g);
        st.boundary = detail::normalized(st.boundary);

        const auto& vars = fam_->I_C();
        st.orbit_dimension = e.u.empty() ? 0 : e.u.back();
        if (st.complete) {
            st.dimension = static_cast<int>(vars.size()) - detail::jacobian_rank(st.equations, vars, st.witnesses);
            st.moduli_dimension = st.dimension - st.orbit_dimension;
        }
        return st;
    }

    bool affordable(const RankBlock& b, int r) const { return detail::minor_count(b, r) <= opt_.minor_budget; }

    const std::vector<SPoly>& minors(const RankBlock& b, int r) {
        auto key = std::make_pair(b, r);
        auto it = minor_cache_.find(key);
        if (it != minor_cache_.end()) return it->second;
        return minor_cache_.emplace(key, detail::minors_of(minors_, b, r)).first->second;
    }

    const CurveFamily* fam_;
    GeneratorMatrix gm_;
    Filtration filt_;
    StrataOptions opt_;
    MinorTable minors_;
    std::vector<RankBlock> blocks_;
    std::map<EVector, Seen> by_e_;
    std::map<std::pair<RankBlock, int>, std::vector<SPoly>> minor_cache_;
};

inline StrataReport stratum_equations(const CurveFamily& fam, const std::vector<Generator>& gens, StrataOptions opt) {
    return StrataEngine(fam, gens, opt).run();
}

}  // namespace mks
