#pragma once

#include "mks/spoly.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace mks {

/// Quotient a / b when b divides a.
inline std::optional<SPoly> try_divide(SPoly a, const SPoly& b) {
    if (b.is_zero()) throw std::domain_error("divide: division by zero");
    if (b.is_constant()) return a * b.constant_term().inverse();
    const auto& lb = b.leading();
    std::vector<SPoly::Term> q;
    while (!a.is_zero()) {
        const auto& la = a.leading();
        SMonomial m;
        if (!SMonomial::divide(la.m, lb.m, m)) return std::nullopt;
        Rational c = la.c / lb.c;
        q.push_back({m, c});
        a -= b.times(m, c);
    }
    return SPoly::from_terms(std::move(q));
}

/// Exact division a / b; throws when b does not divide a.
inline SPoly divide_exact(const SPoly& a, const SPoly& b) {
    auto q = try_divide(a, b);
    if (!q) throw std::domain_error("divide_exact: not divisible");
    return *q;
}

/// Scales to integer coefficients with content 1 and positive leading coefficient.
inline SPoly primitive_integer(const SPoly& p) {
    if (p.is_zero()) return p;
    mpz_class l = 1, g = 0;
    for (auto& t : p.terms()) l = lcm(l, t.c.den());
    for (auto& t : p.terms()) g = gcd(g, mpz_class(t.c.num() * (l / t.c.den())));
    Rational s = Rational(mpq_class(l, g));
    if (p.leading().c.sign() < 0) s = -s;
    return p * s;
}

namespace detail {

// Coefficients of p as a polynomial in s_v: index = exponent.
inline std::vector<SPoly> as_univariate(const SPoly& p, int v) {
    std::vector<SPoly> c(p.degree_in(v) + 1);
    std::vector<std::vector<SPoly::Term>> parts(c.size());
    for (auto& t : p.terms()) {
        int e = t.m.exponent(v);
        parts[e].push_back({t.m.without(v), t.c});
    }
    for (std::size_t e = 0; e < c.size(); ++e) c[e] = SPoly::from_terms(std::move(parts[e]));
    return c;
}

inline SPoly from_univariate(const std::vector<SPoly>& c, int v) {
    SPoly r;
    for (std::size_t e = 0; e < c.size(); ++e)
        if (!c[e].is_zero()) r += c[e].times(SMonomial::var(v, static_cast<int>(e)));
    return r;
}

inline void trim(std::vector<SPoly>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace detail

inline SPoly poly_gcd(const SPoly& a, const SPoly& b);

/// gcd of the coefficients of p viewed in s_v.
inline SPoly content_in(const SPoly& p, int v) {
    SPoly g;
    for (auto& c : detail::as_univariate(p, v)) {
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

/// Multivariate gcd over Q by recursive primitive pseudo-remainder sequences.
/// Normalised with primitive_integer; gcd(0, 0) = 0.
inline SPoly poly_gcd(const SPoly& a, const SPoly& b) {
    if (a.is_zero()) return primitive_integer(b);
    if (b.is_zero()) return primitive_integer(a);
    if (a.is_constant() || b.is_constant()) return SPoly(1);
    if (a.size() <= b.size() && try_divide(b, a)) return primitive_integer(a);
    if (b.size() < a.size() && try_divide(a, b)) return primitive_integer(b);
    auto va = a.variables(), vb = b.variables();
    int v = std::max(*va.rbegin(), *vb.rbegin());
    if (!va.count(v)) return poly_gcd(a, content_in(b, v));
    if (!vb.count(v)) return poly_gcd(content_in(a, v), b);
    SPoly ca = content_in(a, v), cb = content_in(b, v);
    SPoly cont = poly_gcd(ca, cb);
    std::vector<SPoly> A = detail::as_univariate(primitive_integer(divide_exact(a, ca)), v);
    std::vector<SPoly> B = detail::as_univariate(primitive_integer(divide_exact(b, cb)), v);
    if (A.size() < B.size()) std::swap(A, B);
    while (!B.empty() && B.size() > 1) {
        // pseudo-remainder of A by B
        std::vector<SPoly> R = A;
        const SPoly& lb = B.back();
        while (R.size() >= B.size()) {
            SPoly lr = R.back();
            std::size_t shift = R.size() - B.size();
            for (auto& c : R) c = c * lb;
            for (std::size_t i = 0; i < B.size(); ++i) R[i + shift] -= lr * B[i];
            R.pop_back();
            detail::trim(R);
        }
        if (R.empty()) break;
        SPoly r = detail::from_univariate(R, v);
        SPoly rc = content_in(r, v);
        A = std::move(B);
        B = detail::as_univariate(primitive_integer(divide_exact(r, rc)), v);
        detail::trim(B);
    }
    SPoly g;
    if (B.size() == 1) g = SPoly(1);  // constant remainder: coprime in v
    else {
        SPoly bp = detail::from_univariate(B, v);
        g = divide_exact(bp, content_in(bp, v));
    }
    return primitive_integer(cont * g);
}

/// Square-free part: p / gcd(p, ∂p/∂s_v for every variable).
inline SPoly squarefree(const SPoly& p) {
    if (p.is_constant()) return primitive_integer(p);
    SPoly g = p;
    for (int v : p.variables()) g = poly_gcd(g, p.derivative(v));
    return primitive_integer(divide_exact(p, g));
}

inline SPoly poly_lcm(const SPoly& a, const SPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return primitive_integer(divide_exact(a * b, poly_gcd(a, b)));
}

/// Minors of a matrix of polynomials by Laplace expansion along the first chosen row,
/// memoised on (row set, column set) bitmasks. At most 64 rows and 64 columns.
class MinorTable {
public:
    explicit MinorTable(std::vector<std::vector<SPoly>> m) : m_(std::move(m)) {
        if (m_.size() > 64 || (!m_.empty() && m_[0].size() > 64))
            throw std::length_error("MinorTable: at most 64 rows and columns");
    }
    std::size_t rows() const { return m_.size(); }
    std::size_t cols() const { return m_.empty() ? 0 : m_[0].size(); }

    const SPoly& minor(std::uint64_t rmask, std::uint64_t cmask) {
        Key key{rmask, cmask};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        SPoly d;
        if (rmask == 0) {
            d = SPoly(1);
        } else {
            int r = __builtin_ctzll(rmask);
            std::uint64_t rest = rmask & (rmask - 1);
            int sign = 1;
            for (std::uint64_t cm = cmask; cm; cm &= cm - 1) {
                int c = __builtin_ctzll(cm);
                if (!m_[r][c].is_zero()) {
                    const SPoly& sub = minor(rest, cmask & ~(std::uint64_t(1) << c));
                    if (!sub.is_zero()) d.axpy(Rational(sign), m_[r][c] * sub);
                }
                sign = -sign;
            }
        }
        return memo_.emplace(key, std::move(d)).first->second;
    }

private:
    struct Key {
        std::uint64_t r, c;
        bool operator==(const Key& o) const { return r == o.r && c == o.c; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const { return std::hash<std::uint64_t>{}(k.r * 0x9E3779B97F4A7C15ULL ^ k.c); }
    };
    std::vector<std::vector<SPoly>> m_;
    std::unordered_map<Key, SPoly, KeyHash> memo_;
};

/// Calls f(mask) for every k-subset of {0..n-1}.
template <class F>
void for_each_subset(int n, int k, F&& f) {
    if (k > n || k < 0) return;
    if (k == 0) {
        f(std::uint64_t(0));
        return;
    }
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::uint64_t m = 0;
        for (int i : idx) m |= std::uint64_t(1) << i;
        f(m);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace mks
