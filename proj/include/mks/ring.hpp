#pragma once

#include "mks/rational.hpp"
#include "mks/spoly.hpp"

#include <climits>
#include <map>

namespace mks {

/// Coefficient ring Q[s] truncated above a weight cap. With the default cap the
/// arithmetic is exact; a finite cap computes modulo the ideal of monomials of
/// weight > cap, which is a graded quotient and therefore exact in every weight <= cap.
struct SRing {
    using value_type = SPoly;
    int cap = INT_MAX;

    SPoly zero() const { return {}; }
    SPoly one() const { return SPoly(1); }
    SPoly constant(const Rational& c) const { return SPoly(c); }
    SPoly var(int sigma) const { return sigma > cap ? SPoly{} : SPoly::var(sigma); }
    SPoly mul(const SPoly& a, const SPoly& b) const { return SPoly::mul(a, b, cap); }
    static void axpy(SPoly& acc, const Rational& c, const SPoly& a) { acc.axpy(c, a); }
    static SPoly scaled(SPoly a, const Rational& c) { return a *= c; }
    static bool is_zero(const SPoly& a) { return a.is_zero(); }
    static std::string str(const SPoly& a) { return a.str(); }
};

/// Coefficients specialised at a rational point of the parameter space.
struct QRing {
    using value_type = Rational;
    std::map<int, Rational> point;

    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational constant(const Rational& c) const { return c; }
    Rational var(int sigma) const {
        auto it = point.find(sigma);
        return it == point.end() ? Rational(0) : it->second;
    }
    Rational mul(const Rational& a, const Rational& b) const { return a * b; }
    static void axpy(Rational& acc, const Rational& c, const Rational& a) {
        if (!c.is_zero() && !a.is_zero()) acc += c * a;
    }
    static Rational scaled(Rational a, const Rational& c) { return a *= c; }
    static bool is_zero(const Rational& a) { return a.is_zero(); }
    static std::string str(const Rational& a) { return a.str(); }
};

}  // namespace mks
