#pragma once

#include "mks/family.hpp"
#include "mks/puiseux.hpp"
#include "mks/ring.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace mks {

/// F_A as an x,y-polynomial over the ring R.
template <class R>
XYPoly<typename R::value_type> deformation_xy(const CurveFamily& fam, const std::vector<DeformationTerm>& terms,
                                              const R& ring) {
    XYPoly<typename R::value_type> F;
    F[{0, fam.k()}] = ring.one();
    F[{fam.n(), 0}] = ring.one();
    for (auto& t : terms) F[{t.a, t.b}] = ring.var(t.sigma);
    return F;
}

template <class R>
XYPoly<typename R::value_type> partial_x(const XYPoly<typename R::value_type>& g) {
    XYPoly<typename R::value_type> r;
    for (auto& [e, c] : g)
        if (e.i > 0 && !R::is_zero(c)) r[{e.i - 1, e.j}] = R::scaled(c, Rational(e.i));
    return r;
}

template <class R>
XYPoly<typename R::value_type> partial_y(const XYPoly<typename R::value_type>& g) {
    XYPoly<typename R::value_type> r;
    for (auto& [e, c] : g)
        if (e.j > 0 && !R::is_zero(c)) r[{e.i, e.j - 1}] = R::scaled(c, Rational(e.j));
    return r;
}

/// Converts an x,y-polynomial over Q[s] to MPoly.
inline MPoly to_mpoly(const XYPoly<SPoly>& g) {
    MPoly r;
    for (auto& [e, c] : g) r += MPoly::xy(e.i, e.j, c);
    return r;
}

/// Weighted degree of H^gamma (gamma >= 1); kn for gamma = 0.
inline int h_degree(const CurveFamily& fam, int gamma) {
    if (gamma == 0) return fam.kn();
    return gamma * (fam.n() - fam.k()) + fam.kn() - fam.k();
}

/// Order alpha of the row m_ell * H^gamma.
inline int row_order(const CurveFamily& fam, int gamma, const LatticePoint& ell) {
    return fam.degree(ell) + h_degree(fam, gamma) - fam.kn();
}

/// Normal forms modulo the Jacobian ideal of F_A in the basis m_1..m_mu.
///
/// Reduction rewrites x^{n-1} via d_x F and y^{k-1} via d_y F; each rewrite strictly
/// raises the weighted degree, so the normal form of a monomial of degree D only
/// involves basis monomials of degree >= D. Everything of degree above kn + colmax is
/// dropped, which is exact for the coordinates of degree <= kn + colmax.
template <class R>
class MilnorReducer {
public:
    using T = typename R::value_type;
    using Vec = std::vector<T>;

    MilnorReducer(const CurveFamily& fam, std::vector<DeformationTerm> terms, const R& ring, int colmax)
        : fam_(&fam), terms_(std::move(terms)), ring_(&ring), colmax_(colmax) {
        int kn = fam.kn(), k = fam.k(), n = fam.n();
        bound_ = kn + colmax;
        for (int v = 0; v < fam.mu(); ++v)
            if (fam.degree(fam.basis()[v]) <= bound_) cols_.push_back(v);
        col_of_.assign(fam.mu(), -1);
        for (std::size_t c = 0; c < cols_.size(); ++c) col_of_[cols_[c]] = static_cast<int>(c);

        std::vector<LatticePoint> mons;
        for (int i = 0; k * i <= bound_; ++i)
            for (int j = 0; k * i + n * j <= bound_; ++j) mons.push_back({i, j});
        std::sort(mons.begin(), mons.end(), [&](auto& a, auto& b) { return fam.degree(a) > fam.degree(b); });
        for (auto& e : mons) {
            Vec v(cols_.size(), ring.zero());
            if (e.i <= n - 2 && e.j <= k - 2) {
                v[col_of_[fam.basis_index(e)]] = ring.one();
            } else if (e.i >= n - 1) {
                for (auto& t : terms_) {
                    if (t.a == 0) continue;
                    add_scaled(v, {e.i - n + t.a, e.j + t.b}, Rational(-t.a, n), ring.var(t.sigma));
                }
            } else {
                for (auto& t : terms_) {
                    if (t.b == 0) continue;
                    add_scaled(v, {e.i + t.a, e.j - k + t.b}, Rational(-t.b, k), ring.var(t.sigma));
                }
            }
            table_.emplace(e, std::move(v));
        }
    }

    const CurveFamily& family() const { return *fam_; }
    const R& ring() const { return *ring_; }
    int colmax() const { return colmax_; }
    int degree_bound() const { return bound_; }
    /// Basis indices of the tracked coordinates.
    const std::vector<int>& columns() const { return cols_; }
    int column_of_basis(int v) const { return col_of_.at(v); }

    /// Normal form of x^i y^j (zero vector above the degree bound).
    const Vec& monomial(const LatticePoint& e) const {
        auto it = table_.find(e);
        if (it == table_.end()) {
            if (e.i < 0 || e.j < 0) throw std::out_of_range("negative exponent");
            return zero_vec();
        }
        return it->second;
    }

    /// Normal form of x^{i0} y^{j0} * g.
    Vec reduce(const XYPoly<T>& g, LatticePoint shift = {0, 0}) const {
        Vec out(cols_.size(), ring_->zero());
        for (auto& [e, c] : g) {
            if (R::is_zero(c)) continue;
            const Vec& nf = monomial({e.i + shift.i, e.j + shift.j});
            for (std::size_t q = 0; q < nf.size(); ++q)
                if (!R::is_zero(nf[q])) R::axpy(out[q], Rational(1), ring_->mul(c, nf[q]));
        }
        return out;
    }

private:
    void add_scaled(Vec& v, LatticePoint e, const Rational& c, const T& s) {
        if (R::is_zero(s)) return;
        auto it = table_.find(e);
        if (it == table_.end()) return;  // degree above the bound
        for (std::size_t q = 0; q < v.size(); ++q)
            if (!R::is_zero(it->second[q])) R::axpy(v[q], c, ring_->mul(s, it->second[q]));
    }
    const Vec& zero_vec() const {
        if (zero_.size() != cols_.size()) zero_.assign(cols_.size(), ring_->zero());
        return zero_;
    }

    const CurveFamily* fam_;
    std::vector<DeformationTerm> terms_;
    const R* ring_;
    int colmax_;
    int bound_;
    std::vector<int> cols_;
    std::vector<int> col_of_;
    std::map<LatticePoint, Vec> table_;
    mutable Vec zero_;
};

/// H^gamma: a polynomial representative of p^gamma d_xF on the conormal, truncated at
/// weighted degree `bound`. Built by repeatedly cancelling the lowest t-order term of
/// P^gamma * d_xF(X, Y) with the unique monomial x^i y^j (j < k) of that t-order; every
/// order from deg H^gamma upward lies above the conductor, so such a monomial exists.
template <class R>
XYPoly<typename R::value_type> compute_H(const ConormalParam<R>& param, int gamma, int bound) {
    using T = typename R::value_type;
    const CurveFamily& fam = param.family();
    const R& ring = param.ring();
    int k = fam.k(), n = fam.n();
    if (gamma < 1) throw std::invalid_argument("compute_H: gamma must be >= 1");
    auto F = deformation_xy(fam, param.terms(), ring);
    TSeries<R> S = param.eval(partial_x<R>(F));
    TSeries<R> Pser = param.P();
    for (int g = 0; g < gamma; ++g) S = S * Pser;
    int d = h_degree(fam, gamma);
    if (S.precision() <= bound)
        throw PrecisionError("compute_H: parametrization precision " + std::to_string(param.precision()) +
                             " too low for degree bound " + std::to_string(bound));
    XYPoly<T> H;
    for (int m = std::max(d, S.lo()); m <= bound; ++m) {
        const T c = S[m];
        if (R::is_zero(c)) continue;
        int i = -1, j = 0;
        for (; j < k; ++j)
            if (m - n * j >= 0 && (m - n * j) % k == 0) {
                i = (m - n * j) / k;
                break;
            }
        if (i < 0) throw std::logic_error("compute_H: t-order " + std::to_string(m) + " is a semigroup gap");
        Rational sg = Rational((param.eps_x() < 0 && i % 2) ? -1 : 1) * Rational((param.eps_y() < 0 && j % 2) ? -1 : 1);
        T a = R::scaled(c, sg);
        S -= param.xy_series(i, j).times_coeff(a);
        H[{i, j}] = std::move(a);
    }
    return H;
}

/// One row of the structure-constant tensor: normal form of m_ell * H^gamma.
template <class T>
struct StructureRow {
    int gamma = 0;
    LatticePoint ell;
    int alpha = 0;
    std::vector<T> entries;  // indexed like MilnorReducer::columns()
};

/// Rows for gamma = 0..k-2 (H^0 = F_A) and every m_ell with alpha <= max_alpha.
template <class R>
std::vector<StructureRow<typename R::value_type>> structure_rows(
    const MilnorReducer<R>& red, const std::vector<XYPoly<typename R::value_type>>& H, int max_alpha) {
    const CurveFamily& fam = red.family();
    std::vector<StructureRow<typename R::value_type>> rows;
    for (int g = 0; g + 2 <= fam.k() && g < static_cast<int>(H.size()); ++g) {
        for (auto& ell : fam.basis()) {
            int alpha = row_order(fam, g, ell);
            if (alpha > max_alpha) continue;
            rows.push_back({g, ell, alpha, red.reduce(H[g], ell)});
        }
    }
    return rows;
}

/// Bundles parametrization, normal forms and H-list for one coefficient ring.
template <class R>
struct MilnorData {
    using T = typename R::value_type;
    R ring;
    std::vector<DeformationTerm> terms;
    int colmax = 0;
    std::unique_ptr<ConormalParam<R>> param;
    std::unique_ptr<MilnorReducer<R>> reducer;
    std::vector<XYPoly<T>> H;  // H[0] = F_A, H[gamma] for gamma = 1..k-2

    MilnorData(const CurveFamily& fam, const std::vector<int>& A, R r, int colmax_, int precision = 0)
        : ring(std::move(r)), terms(fam.terms(A)), colmax(colmax_) {
        int N = precision > 0 ? precision : required_precision(fam, colmax);
        param = std::make_unique<ConormalParam<R>>(fam, terms, ring, N);
        reducer = std::make_unique<MilnorReducer<R>>(fam, terms, ring, colmax);
        H.push_back(deformation_xy(fam, terms, ring));
        for (int g = 1; g <= fam.k() - 2; ++g) H.push_back(compute_H(*param, g, fam.kn() + colmax));
    }
    MilnorData(const MilnorData&) = delete;
    MilnorData& operator=(const MilnorData&) = delete;

    std::vector<StructureRow<T>> rows(int max_alpha) const { return structure_rows(*reducer, H, max_alpha); }
};

}  // namespace mks
