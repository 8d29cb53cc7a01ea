#pragma once

#include "mks/rational.hpp"
#include "mks/spoly.hpp"

#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mks {

/// Derivation sum_sigma c_sigma ∂/∂s_sigma of a polynomial ring in the s-parameters.
class VectorField {
public:
    using Components = std::map<int, SPoly>;

    VectorField() = default;
    explicit VectorField(Components c) : c_(std::move(c)) { prune(); }

    static VectorField partial(int sigma) { return VectorField({{sigma, SPoly(1)}}); }

    /// Euler field sum sigma s_sigma ∂_sigma over the given index set.
    static VectorField euler(const std::vector<int>& sigmas) {
        Components c;
        for (int s : sigmas) c[s] = SPoly::var(s) * Rational(s);
        return VectorField(std::move(c));
    }

    const Components& components() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    SPoly component(int sigma) const {
        auto it = c_.find(sigma);
        return it == c_.end() ? SPoly{} : it->second;
    }
    void set(int sigma, SPoly p) {
        if (p.is_zero()) c_.erase(sigma);
        else c_[sigma] = std::move(p);
    }

    /// Homogeneity order: every component at sigma has weight sigma - order.
    std::optional<int> order() const {
        std::optional<int> o;
        for (auto& [s, p] : c_)
            for (auto& t : p.terms()) {
                int v = s - t.m.weight();
                if (o && *o != v) return std::nullopt;
                o = v;
            }
        return o;
    }

    /// Splits into homogeneous pieces keyed by order.
    std::map<int, VectorField> homogeneous_parts() const {
        std::map<int, Components> parts;
        for (auto& [s, p] : c_)
            for (auto& t : p.terms()) parts[s - t.m.weight()][s] += SPoly(t.m, t.c);
        std::map<int, VectorField> r;
        for (auto& [o, c] : parts) r.emplace(o, VectorField(std::move(c)));
        return r;
    }

    /// delta(f) = sum c_sigma ∂f/∂s_sigma.
    SPoly apply(const SPoly& f) const {
        SPoly r;
        for (int v : f.variables()) {
            auto it = c_.find(v);
            if (it != c_.end()) r += it->second * f.derivative(v);
        }
        return r;
    }

    VectorField& operator+=(const VectorField& o) { return axpy(Rational(1), o); }
    VectorField& operator-=(const VectorField& o) { return axpy(Rational(-1), o); }
    VectorField& axpy(const Rational& c, const VectorField& o) {
        for (auto& [s, p] : o.c_) c_[s].axpy(c, p);
        prune();
        return *this;
    }
    VectorField& operator*=(const Rational& c) {
        for (auto& [s, p] : c_) p *= c;
        prune();
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(VectorField a, const Rational& c) { return a *= c; }
    friend VectorField operator*(const Rational& c, VectorField a) { return a *= c; }

    /// Multiplies every component by a polynomial.
    VectorField times(const SPoly& f) const {
        Components c;
        for (auto& [s, p] : c_) c[s] = f * p;
        return VectorField(std::move(c));
    }

    friend bool operator==(const VectorField& a, const VectorField& b) { return a.c_ == b.c_; }

    /// Sets s_sigma = 0 for sigma in `zero` and drops those components.
    VectorField restrict_zero(const std::set<int>& zero) const {
        Components c;
        for (auto& [s, p] : c_)
            if (!zero.count(s)) c[s] = p.restrict_zero(zero);
        return VectorField(std::move(c));
    }
    /// Drops components with sigma > max_sigma.
    VectorField truncate_columns(int max_sigma) const {
        Components c;
        for (auto& [s, p] : c_)
            if (s <= max_sigma) c[s] = p;
        return VectorField(std::move(c));
    }

    template <class Map>
    std::map<int, Rational> eval(const Map& point) const {
        std::map<int, Rational> r;
        for (auto& [s, p] : c_) {
            Rational v = p.eval(point);
            if (!v.is_zero()) r[s] = v;
        }
        return r;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string r;
        for (auto& [s, p] : c_) {
            if (!r.empty()) r += " + ";
            std::string ps = p.str();
            bool compound = p.size() > 1 || ps.front() == '-';
            r += (compound ? "(" + ps + ")" : ps) + "*d_" + std::to_string(s);
        }
        return r;
    }

private:
    void prune() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (it->second.is_zero()) it = c_.erase(it);
            else ++it;
        }
    }

    Components c_;
};

/// [a, b](s_sigma) = a(b(s_sigma)) - b(a(s_sigma)).
inline VectorField bracket(const VectorField& a, const VectorField& b) {
    std::set<int> idx;
    for (auto& [s, p] : a.components()) idx.insert(s);
    for (auto& [s, p] : b.components()) idx.insert(s);
    VectorField::Components c;
    for (int s : idx) c[s] = a.apply(b.component(s)) - b.apply(a.component(s));
    return VectorField(std::move(c));
}

}  // namespace mks
