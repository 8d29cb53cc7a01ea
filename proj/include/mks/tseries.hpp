#pragma once

#include "mks/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace mks {

class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Truncated power series sum_{lo <= e < prec} c_e t^e over a coefficient ring R.
/// Coefficients below `lo` are exactly zero; coefficients at or beyond `prec` are
/// unknown and may not be read.
template <class R>
class TSeries {
public:
    using T = typename R::value_type;

    TSeries(const R& ring, int lo, int prec) : ring_(&ring), lo_(lo), prec_(prec) {
        if (prec < lo) prec_ = lo;
        c_.assign(prec_ - lo_, ring.zero());
    }

    /// Exact monomial c t^e (known to the given precision).
    static TSeries monomial(const R& ring, int e, const T& c, int prec) {
        TSeries s(ring, e, prec);
        if (prec > e) s.c_[0] = c;
        return s;
    }

    const R& ring() const { return *ring_; }
    int lo() const { return lo_; }
    int precision() const { return prec_; }

    /// First index with a nonzero coefficient, or precision() if none is known.
    int valuation() const {
        for (int e = lo_; e < prec_; ++e)
            if (!R::is_zero(c_[e - lo_])) return e;
        return prec_;
    }

    const T& operator[](int e) const {
        if (e >= prec_)
            throw PrecisionError("TSeries: coefficient t^" + std::to_string(e) +
                                 " beyond precision " + std::to_string(prec_));
        if (e < lo_) return zero_();
        return c_[e - lo_];
    }
    T& at(int e) {
        if (e >= prec_ || e < lo_)
            throw PrecisionError("TSeries: write outside [" + std::to_string(lo_) + "," +
                                 std::to_string(prec_) + ")");
        return c_[e - lo_];
    }

    /// Lowers the precision (never raises it).
    TSeries truncated(int prec) const {
        TSeries r = *this;
        if (prec < r.prec_) {
            r.prec_ = std::max(prec, r.lo_);
            r.c_.resize(r.prec_ - r.lo_);
        }
        return r;
    }

    TSeries shifted(int d) const {
        TSeries r = *this;
        r.lo_ += d;
        r.prec_ += d;
        return r;
    }

    TSeries& operator+=(const TSeries& o) { return axpy(Rational(1), o); }
    TSeries& operator-=(const TSeries& o) { return axpy(Rational(-1), o); }

    TSeries& axpy(const Rational& c, const TSeries& o) {
        int p = std::min(prec_, o.prec_);
        int l = std::min(lo_, o.lo_);
        std::vector<T> nc(std::max(p - l, 0), ring_->zero());
        for (int e = l; e < p; ++e) {
            T v = (e >= lo_) ? c_[e - lo_] : ring_->zero();
            if (e >= o.lo_) R::axpy(v, c, o.c_[e - o.lo_]);
            nc[e - l] = std::move(v);
        }
        lo_ = l;
        prec_ = std::max(p, l);
        c_ = std::move(nc);
        return *this;
    }

    TSeries scaled(const Rational& c) const {
        TSeries r = *this;
        for (auto& v : r.c_) v = R::scaled(v, c);
        return r;
    }
    TSeries times_coeff(const T& a) const {
        TSeries r = *this;
        for (auto& v : r.c_) v = ring_->mul(v, a);
        return r;
    }

    friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
    friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }

    /// Product; precision is min(prec_a + val_b, prec_b + val_a).
    friend TSeries operator*(const TSeries& a, const TSeries& b) {
        int va = a.valuation(), vb = b.valuation();
        int p = std::min(a.prec_ + vb, b.prec_ + va);
        int l = std::min(va + vb, p);
        TSeries r(*a.ring_, l, p);
        for (int i = va; i < a.prec_; ++i) {
            const T& x = a.c_[i - a.lo_];
            if (R::is_zero(x)) continue;
            for (int j = vb; j < b.prec_ && i + j < p; ++j) {
                const T& y = b.c_[j - b.lo_];
                if (R::is_zero(y)) continue;
                R::axpy(r.c_[i + j - l], Rational(1), a.ring_->mul(x, y));
            }
        }
        return r;
    }

    /// True when every known coefficient vanishes.
    bool is_zero_to_precision() const {
        return std::all_of(c_.begin(), c_.end(), [](const T& v) { return R::is_zero(v); });
    }

private:
    static const T& zero_() {
        static const T z{};
        return z;
    }

    const R* ring_;
    int lo_;
    int prec_;
    std::vector<T> c_;
};

}  // namespace mks
