#pragma once

#include "mks/rational.hpp"
#include "mks/spoly.hpp"

#include <climits>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace mks {

/// Weights x -> k, y -> n, p -> n-k, t -> 1, s_sigma -> -sigma.
struct Grading {
    int k = 0, n = 0;

    Grading() = default;
    Grading(int k_, int n_) : k(k_), n(n_) {
        if (k < 2 || n <= 2 * k || std::gcd(k, n) != 1)
            throw std::invalid_argument("Grading: need gcd(k,n)=1, k>=2 and 2k<n");
    }
    int xy(int i, int j) const { return k * i + n * j; }
};

/// Variable codes used by MPoly: the three space variables, or a parameter s_sigma.
enum class Var : int { x = -1, y = -2, p = -3 };
inline int var_s(int sigma) { return sigma; }

struct Monomial {
    int x = 0, y = 0, p = 0;
    SMonomial s;

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.x == b.x && a.y == b.y && a.p == b.p && a.s == b.s;
    }
    // Plain lex on (x, y, p, s); the s-part uses its own graded order.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        if (a.p != b.p) return a.p < b.p;
        return a.s < b.s;
    }
    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        return {a.x + b.x, a.y + b.y, a.p + b.p, a.s * b.s};
    }
    int degree(const Grading& g) const { return g.k * x + g.n * y + (g.n - g.k) * p - s.weight(); }

    std::string str() const {
        std::string r;
        auto put = [&](const std::string& v, int e) {
            if (e == 0) return;
            if (!r.empty()) r += "*";
            r += v;
            if (e > 1) r += "^" + std::to_string(e);
        };
        for (auto [sg, e] : s.factors()) put("s_" + std::to_string(sg), e);
        put("x", x);
        put("y", y);
        put("p", p);
        return r.empty() ? "1" : r;
    }
};

/// Sparse polynomial over Q in x, y, p and the parameters s_sigma.
class MPoly {
public:
    using Map = std::map<Monomial, Rational>;
    static constexpr int kInhomogeneous = INT_MIN;

    MPoly() = default;
    MPoly(const Rational& c) {
        if (!c.is_zero()) t_[Monomial{}] = c;
    }
    MPoly(const Monomial& m, const Rational& c) {
        if (!c.is_zero()) t_[m] = c;
    }
    static MPoly x(int e = 1) { return MPoly(Monomial{e, 0, 0, {}}, Rational(1)); }
    static MPoly y(int e = 1) { return MPoly(Monomial{0, e, 0, {}}, Rational(1)); }
    static MPoly p(int e = 1) { return MPoly(Monomial{0, 0, e, {}}, Rational(1)); }
    static MPoly s(int sigma, int e = 1) { return MPoly(Monomial{0, 0, 0, SMonomial::var(sigma, e)}, Rational(1)); }
    static MPoly variable(int code) {
        switch (code) {
            case static_cast<int>(Var::x): return x();
            case static_cast<int>(Var::y): return y();
            case static_cast<int>(Var::p): return p();
            default: return s(code);
        }
    }
    /// x^i y^j with coefficient c in Q[s].
    static MPoly xy(int i, int j, const SPoly& c) {
        MPoly r;
        for (auto& t : c.terms()) r.t_[Monomial{i, j, 0, t.m}] = t.c;
        return r;
    }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::size_t size() const { return t_.size(); }
    Rational coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Rational(0) : it->second;
    }

    MPoly& operator+=(const MPoly& o) { return axpy(Rational(1), o); }
    MPoly& operator-=(const MPoly& o) { return axpy(Rational(-1), o); }
    MPoly& axpy(const Rational& c, const MPoly& o) {
        if (c.is_zero()) return *this;
        for (auto& [m, v] : o.t_) add_term(m, c * v);
        return *this;
    }
    MPoly& operator*=(const Rational& c) {
        if (c.is_zero()) t_.clear();
        else
            for (auto& [m, v] : t_) v *= c;
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator-(MPoly a) { return a *= Rational(-1); }
    friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
    friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r;
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    MPoly pow(int e) const {
        if (e < 0) throw std::invalid_argument("MPoly::pow: negative exponent");
        MPoly r(Rational(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.t_ == b.t_; }

    MPoly derivative(int code) const {
        MPoly r;
        for (auto& [m, c] : t_) {
            Monomial d = m;
            int e = 0;
            switch (code) {
                case static_cast<int>(Var::x): e = d.x--; break;
                case static_cast<int>(Var::y): e = d.y--; break;
                case static_cast<int>(Var::p): e = d.p--; break;
                default:
                    e = m.s.exponent(code);
                    if (e) d.s = m.s.without(code) * SMonomial::var(code, e - 1);
            }
            if (e) r.add_term(d, c * Rational(e));
        }
        return r;
    }

    /// Replaces one variable by a polynomial.
    MPoly substitute(int code, const MPoly& value) const {
        MPoly r;
        std::map<int, MPoly> powers;
        for (auto& [m, c] : t_) {
            Monomial rest = m;
            int e = 0;
            switch (code) {
                case static_cast<int>(Var::x): e = rest.x; rest.x = 0; break;
                case static_cast<int>(Var::y): e = rest.y; rest.y = 0; break;
                case static_cast<int>(Var::p): e = rest.p; rest.p = 0; break;
                default: e = m.s.exponent(code); rest.s = m.s.without(code);
            }
            auto it = powers.find(e);
            if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
            r += MPoly(rest, c) * it->second;
        }
        return r;
    }

    /// Common weighted degree of all terms, or kInhomogeneous (also for 0).
    int weighted_degree(const Grading& g) const {
        if (t_.empty()) return kInhomogeneous;
        int d = t_.begin()->first.degree(g);
        for (auto& [m, c] : t_)
            if (m.degree(g) != d) return kInhomogeneous;
        return d;
    }

    /// Coefficient of x^i y^j as a polynomial in s (p must not occur).
    SPoly coeff_xy(int i, int j) const {
        std::vector<SPoly::Term> out;
        for (auto& [m, c] : t_)
            if (m.x == i && m.y == j && m.p == 0) out.push_back({m.s, c});
        return SPoly::from_terms(std::move(out));
    }

    /// Terms in canonical order: weighted degree descending, then lex on
    /// (x, y, p, s by ascending sigma) descending.
    std::vector<std::pair<Monomial, Rational>> ordered(const Grading& g) const {
        std::vector<std::pair<Monomial, Rational>> v(t_.begin(), t_.end());
        std::stable_sort(v.begin(), v.end(), [&](auto& a, auto& b) {
            int da = a.first.degree(g), db = b.first.degree(g);
            if (da != db) return da > db;
            return b.first < a.first;
        });
        return v;
    }

    std::string str(const Grading& g) const {
        if (t_.empty()) return "0";
        std::string s;
        for (auto& [m, c0] : ordered(g)) {
            Rational c = c0;
            bool neg = c.sign() < 0;
            if (neg) c = -c;
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            if (m == Monomial{}) s += c.str();
            else if (c.is_one()) s += m.str();
            else s += c.str() + "*" + m.str();
        }
        return s;
    }

    /// Parses strings produced by str(): terms joined by + and -, factors by *.
    static MPoly parse(std::string_view text) {
        std::string src;
        for (char ch : text)
            if (ch != ' ') src += ch;
        if (src.empty()) throw std::invalid_argument("MPoly::parse: empty input");
        MPoly r;
        std::size_t pos = 0;
        while (pos < src.size()) {
            int sign = 1;
            if (src[pos] == '+' || src[pos] == '-') {
                sign = src[pos] == '-' ? -1 : 1;
                ++pos;
            } else if (pos != 0) {
                throw std::invalid_argument("MPoly::parse: expected sign");
            }
            std::size_t end = src.find_first_of("+-", pos);
            std::string term = src.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            if (term.empty()) throw std::invalid_argument("MPoly::parse: empty term");
            pos = end == std::string::npos ? src.size() : end;
            r += parse_term(term) * Rational(sign);
        }
        return r;
    }

private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = t_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    static MPoly parse_term(const std::string& term) {
        Rational c(1);
        Monomial m;
        std::size_t pos = 0;
        while (pos <= term.size()) {
            std::size_t end = term.find('*', pos);
            std::string f = term.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            if (f.empty()) throw std::invalid_argument("MPoly::parse: empty factor");
            if (std::isdigit(static_cast<unsigned char>(f[0]))) {
                c *= Rational::parse(f);
            } else {
                std::string name = f;
                int e = 1;
                if (auto caret = f.find('^'); caret != std::string::npos) {
                    name = f.substr(0, caret);
                    e = parse_int(f.substr(caret + 1));
                }
                if (name == "x") m.x += e;
                else if (name == "y") m.y += e;
                else if (name == "p") m.p += e;
                else if (name.rfind("s_", 0) == 0) m.s = m.s * SMonomial::var(parse_int(name.substr(2)), e);
                else throw std::invalid_argument("MPoly::parse: unknown variable '" + name + "'");
            }
            if (end == std::string::npos) break;
            pos = end + 1;
        }
        return MPoly(m, c);
    }

    static int parse_int(const std::string& s) {
        if (s.empty() || s.size() > 6) throw std::invalid_argument("MPoly::parse: bad integer '" + s + "'");
        for (char ch : s)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw std::invalid_argument("MPoly::parse: bad integer '" + s + "'");
        return std::stoi(s);
    }

    Map t_;
};

inline int weighted_degree(const MPoly& g, const Grading& gr) { return g.weighted_degree(gr); }

}  // namespace mks
