#pragma once

#include "mks/family.hpp"
#include "mks/rational.hpp"
#include "mks/vector_field.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

namespace mks {

/// A rational point of parameter space: sigma -> value, absent coordinates are zero.
using Point = std::map<int, Rational>;

inline Point prune(Point p) {
    for (auto it = p.begin(); it != p.end();)
        it = it->second.is_zero() ? p.erase(it) : std::next(it);
    return p;
}

namespace detail {

/// Dense univariate polynomial in the flow time.
using UPoly = std::vector<Rational>;

inline UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero())
            for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline void uadd(UPoly& a, const UPoly& b, const Rational& c) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += c * b[i];
}

inline UPoly upow(const UPoly& a, int e) {
    UPoly r{Rational(1)};
    for (int i = 0; i < e; ++i) r = umul(r, a);
    return r;
}

inline Rational ueval(const UPoly& a, const Rational& t) {
    Rational r(0);
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * t + *it;
    return r;
}

}  // namespace detail

/// exp(time * delta) applied to a point, for a homogeneous field of positive order.
/// Component sigma only involves variables of weight < sigma, so the coordinates are
/// solved as polynomials in time in ascending sigma.
inline Point flow(const VectorField& delta, const Point& point, const Rational& time) {
    auto o = delta.order();
    if (delta.is_zero()) return prune(point);
    if (!o || *o <= 0) throw std::invalid_argument("flow: field must be homogeneous of positive order (use scale for the Euler field)");
    std::map<int, detail::UPoly> traj;
    for (auto& [s, v] : point) traj[s] = {v};
    for (auto& [s, p] : delta.components()) {
        // integrand delta_s(s(tau)) as polynomial in tau
        detail::UPoly integrand;
        for (auto& t : p.terms()) {
            detail::UPoly term{t.c};
            for (auto [v, e] : t.m.factors()) {
                if (v >= s) throw std::logic_error("flow: field is not triangular");
                auto it = traj.find(v);
                term = it == traj.end() ? detail::UPoly{} : detail::umul(term, detail::upow(it->second, e));
            }
            detail::uadd(integrand, term, Rational(1));
        }
        detail::UPoly& cur = traj[s];
        if (cur.empty()) cur = {Rational(0)};
        for (std::size_t i = 0; i < integrand.size(); ++i) {
            if (cur.size() < i + 2) cur.resize(i + 2, Rational(0));
            cur[i + 1] += integrand[i] / Rational(static_cast<long>(i + 1));
        }
    }
    Point out;
    for (auto& [s, u] : traj) out[s] = detail::ueval(u, time);
    return prune(out);
}

/// s_sigma -> lambda^sigma s_sigma.
inline Point scale(const Point& point, const Rational& lambda) {
    if (lambda.is_zero()) throw std::invalid_argument("scale: lambda must be nonzero");
    Point out;
    for (auto& [s, v] : point) out[s] = v * lambda.pow(s);
    return prune(out);
}

/// Moves a point of C^B into C^C along the pivot fields (sigma in I_B \ I_C, ascending).
/// Coordinates above varpi are dropped, since plain translations there stay tangent.
inline Point rectify_to_C(const CurveFamily& fam, const std::map<int, VectorField>& pivots, Point point) {
    for (int s : fam.I_BminusC()) {
        if (s > fam.varpi()) {
            point.erase(s);
            continue;
        }
        auto it = point.find(s);
        if (it == point.end() || it->second.is_zero()) continue;
        auto pv = pivots.find(s);
        if (pv == pivots.end()) throw std::logic_error("rectify_to_C: missing pivot for " + std::to_string(s));
        Rational c = pv->second.component(s).constant_term();
        if (c.is_zero()) throw std::logic_error("rectify_to_C: pivot is not constant");
        point = flow(pv->second, point, -it->second / c);
    }
    point = prune(point);
    for (auto& [s, v] : point)
        if (!std::binary_search(fam.I_C().begin(), fam.I_C().end(), s))
            throw std::logic_error("rectify_to_C: coordinate " + std::to_string(s) + " survived");
    return point;
}

}  // namespace mks
