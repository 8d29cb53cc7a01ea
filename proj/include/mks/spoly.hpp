#pragma once

#include "mks/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mks {

/// Monomial in the parameters s_sigma, stored as sorted (sigma, exponent) pairs.
/// The grading gives s_sigma positive weight sigma.
class SMonomial {
public:
    using Factor = std::pair<std::uint16_t, std::uint16_t>;
    using Storage = boost::container::small_vector<Factor, 6>;

    SMonomial() = default;

    static SMonomial var(int sigma, int exp = 1) {
        if (sigma <= 0 || sigma > 65535) throw std::out_of_range("SMonomial: bad variable index");
        SMonomial m;
        if (exp > 0) {
            m.f_.push_back({static_cast<std::uint16_t>(sigma), static_cast<std::uint16_t>(exp)});
            m.weight_ = sigma * exp;
        }
        return m;
    }

    const Storage& factors() const { return f_; }
    int weight() const { return weight_; }
    int degree() const {
        int d = 0;
        for (auto [s, e] : f_) d += e;
        return d;
    }
    bool is_one() const { return f_.empty(); }

    int exponent(int sigma) const {
        for (auto [s, e] : f_)
            if (s == sigma) return e;
        return 0;
    }

    friend SMonomial operator*(const SMonomial& a, const SMonomial& b) {
        SMonomial r;
        r.f_.reserve(a.f_.size() + b.f_.size());
        auto i = a.f_.begin(), j = b.f_.begin();
        while (i != a.f_.end() && j != b.f_.end()) {
            if (i->first < j->first) r.f_.push_back(*i++);
            else if (j->first < i->first) r.f_.push_back(*j++);
            else {
                r.f_.push_back({i->first, static_cast<std::uint16_t>(i->second + j->second)});
                ++i, ++j;
            }
        }
        r.f_.insert(r.f_.end(), i, a.f_.end());
        r.f_.insert(r.f_.end(), j, b.f_.end());
        r.weight_ = a.weight_ + b.weight_;
        return r;
    }

    /// Returns a/b, or false when b does not divide a.
    static bool divide(const SMonomial& a, const SMonomial& b, SMonomial& out) {
        SMonomial r;
        auto j = b.f_.begin();
        for (auto [s, e] : a.f_) {
            while (j != b.f_.end() && j->first < s) return false;
            if (j != b.f_.end() && j->first == s) {
                if (j->second > e) return false;
                if (j->second < e) r.f_.push_back({s, static_cast<std::uint16_t>(e - j->second)});
                ++j;
            } else {
                r.f_.push_back({s, e});
            }
        }
        if (j != b.f_.end()) return false;
        r.weight_ = a.weight_ - b.weight_;
        out = std::move(r);
        return true;
    }

    SMonomial without(int sigma) const {
        SMonomial r;
        for (auto fe : f_)
            if (fe.first != sigma) r.f_.push_back(fe), r.weight_ += fe.first * fe.second;
        return r;
    }

    // Graded by weight, then lexicographic with s_sigma ordered by ascending sigma
    // (a larger exponent on the smallest differing variable is larger).
    friend std::strong_ordering operator<=>(const SMonomial& a, const SMonomial& b) {
        if (a.weight_ != b.weight_) return a.weight_ <=> b.weight_;
        std::size_t i = 0;
        for (; i < a.f_.size() && i < b.f_.size(); ++i) {
            if (a.f_[i] == b.f_[i]) continue;
            if (a.f_[i].first != b.f_[i].first)
                return a.f_[i].first < b.f_[i].first ? std::strong_ordering::greater
                                                     : std::strong_ordering::less;
            return a.f_[i].second <=> b.f_[i].second;
        }
        return a.f_.size() <=> b.f_.size();
    }
    friend bool operator==(const SMonomial& a, const SMonomial& b) { return a.f_ == b.f_; }

    std::string str() const {
        std::string s;
        for (auto [v, e] : f_) {
            if (!s.empty()) s += "*";
            s += "s_" + std::to_string(v);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s.empty() ? "1" : s;
    }

private:
    Storage f_;
    int weight_ = 0;
};

/// Sparse polynomial in the s-parameters with rational coefficients.
/// Terms are kept sorted ascending in the SMonomial order with no zero coefficients.
class SPoly {
public:
    struct Term {
        SMonomial m;
        Rational c;
    };

    SPoly() = default;
    SPoly(const Rational& c) {
        if (!c.is_zero()) t_.push_back({SMonomial{}, c});
    }
    SPoly(long c) : SPoly(Rational(c)) {}
    SPoly(int c) : SPoly(Rational(c)) {}
    SPoly(const SMonomial& m, const Rational& c) {
        if (!c.is_zero()) t_.push_back({m, c});
    }
    static SPoly var(int sigma) { return SPoly(SMonomial::var(sigma), Rational(1)); }

    /// Builds from unsorted terms, combining duplicates.
    static SPoly from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.m < b.m; });
        SPoly r;
        for (auto& t : terms) {
            if (!r.t_.empty() && r.t_.back().m == t.m) r.t_.back().c += t.c;
            else r.t_.push_back(std::move(t));
            if (r.t_.back().c.is_zero()) r.t_.pop_back();
        }
        return r;
    }

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    Rational constant_term() const {
        return (!t_.empty() && t_[0].m.is_one()) ? t_[0].c : Rational(0);
    }
    Rational coeff(const SMonomial& m) const {
        auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& a, const SMonomial& b) { return a.m < b; });
        return (it != t_.end() && it->m == m) ? it->c : Rational(0);
    }
    int max_weight() const { return t_.empty() ? INT_MIN : t_.back().m.weight(); }
    int min_weight() const { return t_.empty() ? INT_MAX : t_.front().m.weight(); }
    bool is_homogeneous() const { return t_.empty() || min_weight() == max_weight(); }
    /// Leading term in the term order.
    const Term& leading() const {
        if (t_.empty()) throw std::logic_error("SPoly: leading term of zero");
        return t_.back();
    }

    std::set<int> variables() const {
        std::set<int> v;
        for (auto& t : t_)
            for (auto [s, e] : t.m.factors()) v.insert(s);
        return v;
    }

    int degree_in(int sigma) const {
        int d = 0;
        for (auto& t : t_) d = std::max(d, t.m.exponent(sigma));
        return d;
    }

    SPoly& operator+=(const SPoly& o) { return axpy(Rational(1), o); }
    SPoly& operator-=(const SPoly& o) { return axpy(Rational(-1), o); }

    /// this += c * o
    SPoly& axpy(const Rational& c, const SPoly& o) {
        if (c.is_zero() || o.t_.empty()) return *this;
        std::vector<Term> out;
        out.reserve(t_.size() + o.t_.size());
        auto i = t_.begin();
        auto j = o.t_.begin();
        while (i != t_.end() || j != o.t_.end()) {
            if (j == o.t_.end() || (i != t_.end() && i->m < j->m)) {
                out.push_back(std::move(*i++));
            } else if (i == t_.end() || j->m < i->m) {
                out.push_back({j->m, c * j->c});
                ++j;
            } else {
                Rational v = i->c + c * j->c;
                if (!v.is_zero()) out.push_back({std::move(i->m), std::move(v)});
                ++i, ++j;
            }
        }
        t_ = std::move(out);
        return *this;
    }

    SPoly& operator*=(const Rational& c) {
        if (c.is_zero()) t_.clear();
        else
            for (auto& t : t_) t.c *= c;
        return *this;
    }
    friend SPoly operator*(SPoly a, const Rational& c) { return a *= c; }
    friend SPoly operator*(const Rational& c, SPoly a) { return a *= c; }
    friend SPoly operator+(SPoly a, const SPoly& b) { return a += b; }
    friend SPoly operator-(SPoly a, const SPoly& b) { return a -= b; }
    friend SPoly operator-(SPoly a) { return a *= Rational(-1); }

    /// Product with all terms of weight above cap dropped.
    static SPoly mul(const SPoly& a, const SPoly& b, int cap = INT_MAX) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.t_.size() == 1 && a.t_[0].m.is_one()) return truncated(b * a.t_[0].c, cap);
        if (b.t_.size() == 1 && b.t_[0].m.is_one()) return truncated(a * b.t_[0].c, cap);
        std::vector<Term> prod;
        prod.reserve(a.t_.size() * b.t_.size());
        for (auto& x : a.t_) {
            if (x.m.weight() + b.min_weight() > cap) break;
            for (auto& y : b.t_) {
                if (x.m.weight() + y.m.weight() > cap) break;
                prod.push_back({x.m * y.m, x.c * y.c});
            }
        }
        return from_terms(std::move(prod));
    }
    friend SPoly operator*(const SPoly& a, const SPoly& b) { return mul(a, b); }

    /// Multiplication by a monomial preserves the term order.
    SPoly times(const SMonomial& m, const Rational& c = Rational(1), int cap = INT_MAX) const {
        SPoly r;
        if (c.is_zero()) return r;
        for (auto& t : t_) {
            if (t.m.weight() + m.weight() > cap) break;
            r.t_.push_back({t.m * m, t.c * c});
        }
        return r;
    }

    static SPoly truncated(SPoly p, int cap) {
        while (!p.t_.empty() && p.t_.back().m.weight() > cap) p.t_.pop_back();
        return p;
    }

    SPoly pow(int e, int cap = INT_MAX) const {
        SPoly r(1), b = *this;
        while (e > 0) {
            if (e & 1) r = mul(r, b, cap);
            e >>= 1;
            if (e) b = mul(b, b, cap);
        }
        return r;
    }

    SPoly derivative(int sigma) const {
        std::vector<Term> out;
        for (auto& t : t_) {
            int e = t.m.exponent(sigma);
            if (e == 0) continue;
            SMonomial m = t.m.without(sigma) * SMonomial::var(sigma, e - 1);
            out.push_back({m, t.c * Rational(e)});
        }
        return from_terms(std::move(out));
    }

    /// Homogeneous component of the given weight.
    SPoly component(int w) const {
        SPoly r;
        for (auto& t : t_)
            if (t.m.weight() == w) r.t_.push_back(t);
        return r;
    }

    template <class Map>
    Rational eval(const Map& point) const {
        Rational acc(0);
        for (auto& t : t_) {
            Rational v = t.c;
            for (auto [s, e] : t.m.factors()) {
                auto it = point.find(s);
                if (it == point.end() || it->second.is_zero()) { v = Rational(0); break; }
                v *= it->second.pow(e);
            }
            acc += v;
        }
        return acc;
    }

    /// Sets every s_sigma with sigma in `zero` to 0.
    SPoly restrict_zero(const std::set<int>& zero) const {
        SPoly r;
        for (auto& t : t_) {
            bool keep = true;
            for (auto [s, e] : t.m.factors())
                if (zero.count(s)) { keep = false; break; }
            if (keep) r.t_.push_back(t);
        }
        return r;
    }

    /// Keeps only variables in `keep` (others set to zero).
    SPoly restrict_to(const std::set<int>& keep) const {
        SPoly r;
        for (auto& t : t_) {
            bool ok = true;
            for (auto [s, e] : t.m.factors())
                if (!keep.count(s)) { ok = false; break; }
            if (ok) r.t_.push_back(t);
        }
        return r;
    }

    /// Substitutes s_sigma -> value for each sigma in the map.
    SPoly substitute(const std::map<int, SPoly>& sub, int cap = INT_MAX) const {
        SPoly acc;
        for (auto& t : t_) {
            SPoly term(SMonomial{}, t.c);
            SMonomial rest;
            for (auto [s, e] : t.m.factors()) {
                auto it = sub.find(s);
                if (it == sub.end()) rest = rest * SMonomial::var(s, e);
                else term = mul(term, it->second.pow(e, cap), cap);
            }
            acc += term.times(rest, Rational(1), cap);
        }
        return acc;
    }

    friend bool operator==(const SPoly& a, const SPoly& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (std::size_t i = 0; i < a.t_.size(); ++i)
            if (!(a.t_[i].m == b.t_[i].m) || a.t_[i].c != b.t_[i].c) return false;
        return true;
    }

    /// Printed from the leading term down, e.g. "-58/39*s_2^2 + 4*s_4".
    std::string str() const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            Rational c = it->c;
            bool neg = c.sign() < 0;
            if (neg) c = -c;
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            if (it->m.is_one()) s += c.str();
            else if (c.is_one()) s += it->m.str();
            else s += c.str() + "*" + it->m.str();
        }
        return s;
    }

private:
    std::vector<Term> t_;
};

}  // namespace mks
