#pragma once

#include "mks/family.hpp"
#include "mks/ring.hpp"
#include "mks/tseries.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mks {

/// Polynomial in x, y with coefficients in a ring R (used for F, its partials and H).
template <class T>
using XYPoly = std::map<LatticePoint, T>;

/// Smallest precision N for which H-computations truncated at weighted degree
/// kn + colmax are fully determined.
inline int required_precision(const CurveFamily& fam, int colmax) { return fam.kn() + std::max(colmax, 0) + 1; }

/// Default precision of the CLI.
inline int default_precision(const CurveFamily& fam) {
    int k = fam.k(), n = fam.n();
    return (k - 1) * (n - k) + k * n + k * (n - 1) + 2;
}

/// Parametrization t -> (X, Y, P) of the relative conormal of F_A.
/// Sign convention: n odd gives X = -t^k, Y = t^n v; n even gives X = t^k, Y = -t^n v,
/// with v = 1 + sum_{i>=1} psi_i t^i.
template <class R>
class ConormalParam {
public:
    using T = typename R::value_type;

    ConormalParam(const CurveFamily& fam, std::vector<DeformationTerm> terms, const R& ring, int N)
        : fam_(&fam), terms_(std::move(terms)), ring_(&ring), N_(N) {
        if (N < fam.kn() + 1) throw PrecisionError("parametrize: precision must be at least kn+1");
        int k = fam.k(), n = fam.n();
        ex_ = (n % 2 == 1) ? -1 : 1;
        ey_ = (n % 2 == 1) ? 1 : -1;
        L_ = N - fam.kn();
        v_.assign(L_, ring.zero());
        w_.assign(k + 1, std::vector<T>(L_, ring.zero()));
        v_[0] = ring.one();
        for (int m = 0; m <= k; ++m) w_[m][0] = ring.one();

        std::vector<std::pair<Rational, T>> coef;  // c_ab * s_sigma
        for (auto& t : terms_) coef.push_back({sign(t.a, t.b - k), ring.var(t.sigma)});

        std::vector<T> rest(k + 1);
        for (int i = 1; i < L_; ++i) {
            for (int m = 1; m <= k; ++m) {
                T acc = ring.zero();
                for (int j = 1; j < i; ++j) {
                    if (R::is_zero(v_[j]) || R::is_zero(w_[m][i - j])) continue;
                    R::axpy(acc, Rational(m * j - (i - j), i), ring.mul(v_[j], w_[m][i - j]));
                }
                rest[m] = std::move(acc);
            }
            // k psi_i + rest_k + sum c s_sigma [v^b]_{i - sigma} = 0
            T rhs = rest[k];
            for (std::size_t q = 0; q < terms_.size(); ++q) {
                int s = terms_[q].sigma, b = terms_[q].b;
                if (s > i || R::is_zero(coef[q].second)) continue;
                const T& wb = w_[b][i - s];
                if (R::is_zero(wb)) continue;
                R::axpy(rhs, coef[q].first, ring.mul(coef[q].second, wb));
            }
            v_[i] = R::scaled(std::move(rhs), Rational(-1, k));
            for (int m = 1; m <= k; ++m) {
                T wi = rest[m];
                R::axpy(wi, Rational(m), v_[i]);
                w_[m][i] = std::move(wi);
            }
        }
    }

    const CurveFamily& family() const { return *fam_; }
    const R& ring() const { return *ring_; }
    const std::vector<DeformationTerm>& terms() const { return terms_; }
    int precision() const { return N_; }
    int eps_x() const { return ex_; }
    int eps_y() const { return ey_; }
    /// Number of known coefficients of v.
    int length() const { return L_; }

    const T& psi(int i) const {
        if (i < 1) throw std::out_of_range("psi index starts at 1");
        if (i >= L_) throw PrecisionError("psi_" + std::to_string(i) + " beyond precision");
        return v_[i];
    }
    /// Coefficient of t^i in v^m (0 <= m <= k).
    const T& vpow(int m, int i) const {
        if (i >= L_) throw PrecisionError("v^m coefficient beyond precision");
        return w_.at(m)[i];
    }

    TSeries<R> X() const {
        return TSeries<R>::monomial(*ring_, fam_->k(), ring_->constant(Rational(ex_)), N_);
    }
    TSeries<R> Y() const { return xy_series(0, 1); }
    TSeries<R> P() const {
        int n = fam_->n(), k = fam_->k();
        TSeries<R> s(*ring_, n - k, n - k + L_);
        for (int i = 0; i < L_; ++i) s.at(n - k + i) = R::scaled(v_[i], Rational(ex_ * ey_ * (n + i), k));
        return s;
    }

    /// X^i Y^j = eps_x^i eps_y^j t^{ki+nj} v^j, for j <= k.
    TSeries<R> xy_series(int i, int j) const {
        if (j > fam_->k()) throw std::out_of_range("xy_series: y-exponent above k");
        int base = fam_->grading().xy(i, j);
        TSeries<R> s(*ring_, base, base + L_);
        Rational c = sign(i, j);
        for (int q = 0; q < L_; ++q) s.at(base + q) = R::scaled(w_[j][q], c);
        return s;
    }

    /// Substitutes x -> X, y -> Y into a polynomial with y-degree <= k.
    TSeries<R> eval(const XYPoly<T>& g) const {
        std::optional<TSeries<R>> acc;
        for (auto& [e, c] : g) {
            if (R::is_zero(c)) continue;
            auto term = xy_series(e.i, e.j).times_coeff(c);
            if (!acc) acc = std::move(term);
            else *acc += term;
        }
        if (!acc) return TSeries<R>(*ring_, N_, N_);
        return *acc;
    }

private:
    /// eps_x^a eps_y^b
    Rational sign(int a, int b) const {
        int s = 1;
        if (ex_ < 0 && (a % 2 + 2) % 2 == 1) s = -s;
        if (ey_ < 0 && (b % 2 + 2) % 2 == 1) s = -s;
        return Rational(s);
    }

    const CurveFamily* fam_;
    std::vector<DeformationTerm> terms_;
    const R* ring_;
    int N_;
    int ex_ = -1, ey_ = 1;
    int L_ = 0;
    std::vector<T> v_;
    std::vector<std::vector<T>> w_;
};

}  // namespace mks
