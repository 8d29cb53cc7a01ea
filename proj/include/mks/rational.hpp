#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mks {

/// Exact rational number backed by GMP. Always kept in lowest terms.
class Rational {
public:
    Rational() = default;
    Rational(long v) : q_(v) {}
    Rational(int v) : q_(v) {}
    Rational(long num, long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(const mpz_class& z) : q_(z) {}

    // Accepts "p", "-p", "p/q".
    static Rational parse(std::string_view s) {
        std::string str(s);
        auto trim = [](std::string& t) {
            while (!t.empty() && (t.front() == ' ' || t.front() == '+')) t.erase(t.begin());
            while (!t.empty() && t.back() == ' ') t.pop_back();
        };
        trim(str);
        if (str.empty()) throw std::invalid_argument("Rational: empty string");
        for (char c : str)
            if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
                throw std::invalid_argument("Rational: bad character in '" + str + "'");
        auto slash = str.find('/');
        mpz_class num, den(1);
        if (num.set_str(str.substr(0, slash), 10) != 0)
            throw std::invalid_argument("Rational: bad numerator in '" + str + "'");
        if (slash != std::string::npos) {
            auto d = str.substr(slash + 1);
            if (d.empty() || d[0] == '-' || den.set_str(d, 10) != 0)
                throw std::invalid_argument("Rational: bad denominator in '" + str + "'");
            if (den == 0) throw std::domain_error("Rational: zero denominator");
        }
        return Rational(mpq_class(num, den));
    }

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    Rational inverse() const { return Rational(1) / *this; }
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }
    Rational pow(int e) const {
        if (e < 0) return inverse().pow(-e);
        Rational r(1), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    /// "p" for integers, otherwise "p/q".
    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    std::size_t hash() const {
        return std::hash<std::string>{}(str());
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

}  // namespace mks
