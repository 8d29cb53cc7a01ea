#pragma once

#include "mks/linalg.hpp"
#include "mks/spoly.hpp"
#include "mks/vector_field.hpp"

#include <climits>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mks {

/// All monomials of the given weight in the variables `vars` (each s_sigma has weight sigma).
class MonomialCache {
public:
    explicit MonomialCache(std::vector<int> vars) : vars_(std::move(vars)) {
        std::sort(vars_.begin(), vars_.end());
    }
    const std::vector<int>& vars() const { return vars_; }

    const std::vector<SMonomial>& of_weight(int w) {
        auto it = cache_.find(w);
        if (it != cache_.end()) return it->second;
        std::vector<SMonomial> out;
        if (w >= 0) {
            SMonomial cur;
            enumerate(0, w, cur, out);
        }
        return cache_.emplace(w, std::move(out)).first->second;
    }

private:
    void enumerate(std::size_t idx, int w, const SMonomial& cur, std::vector<SMonomial>& out) {
        if (w == 0) {
            out.push_back(cur);
            return;
        }
        if (idx >= vars_.size()) return;
        int s = vars_[idx];
        for (int e = 0; e * s <= w; ++e)
            enumerate(idx + 1, w - e * s, e ? cur * SMonomial::var(s, e) : cur, out);
    }

    std::vector<int> vars_;
    std::map<int, std::vector<SMonomial>> cache_;
};

/// Submodule of vector fields over Q[s_vars] generated by homogeneous fields, with
/// components above `max_col` ignored. Membership is decided degree by degree: a
/// homogeneous target of order d lies in the module iff it is a Q-combination of
/// m*g for generators g of order >= d and monomials m of weight order(g) - d.
class GradedModule {
public:
    GradedModule(std::vector<int> vars, std::vector<VectorField> gens, int max_col = INT_MAX)
        : mons_(std::make_shared<MonomialCache>(std::move(vars))), max_col_(max_col) {
        for (auto& g : gens) add(g);
    }
    GradedModule(std::shared_ptr<MonomialCache> mons, std::vector<VectorField> gens, int max_col = INT_MAX)
        : mons_(std::move(mons)), max_col_(max_col) {
        for (auto& g : gens) add(g);
    }

    void add(const VectorField& g) {
        VectorField t = g.truncate_columns(max_col_);
        if (t.is_zero()) return;
        for (auto& [o, part] : t.homogeneous_parts()) gens_.push_back({o, part});
        cache_.clear();
    }

    std::size_t size() const { return gens_.size(); }
    const std::vector<int>& vars() const { return mons_->vars(); }

    bool contains(const VectorField& target) { return remainder(target).is_zero(); }

    /// Canonical representative of target modulo the module (per homogeneous part).
    VectorField remainder(const VectorField& target) {
        VectorField rem;
        for (auto& [d, part] : target.truncate_columns(max_col_).homogeneous_parts()) {
            auto& lvl = level(d);
            SparseVec v;
            std::vector<std::pair<int, SMonomial>> unknown;
            std::map<int, Rational> acc;
            for (auto& [s, p] : part.components())
                for (auto& t : p.terms()) {
                    int id = lvl.coords.find({s, t.m});
                    if (id < 0) rem += VectorField({{s, SPoly(t.m, t.c)}});
                    else acc[id] += t.c;
                }
            for (auto& [i, c] : lvl.ech.reduce(to_sparse(acc))) {
                auto& key = lvl.coords.key(i);
                rem += VectorField({{key.first, SPoly(key.second, c)}});
            }
        }
        return rem;
    }

private:
    struct Level {
        IndexMap<std::pair<int, SMonomial>> coords;
        Echelon ech;
    };

    Level& level(int d) {
        auto it = cache_.find(d);
        if (it != cache_.end()) return *it->second;
        auto lvl = std::make_unique<Level>();
        std::vector<std::map<std::pair<int, SMonomial>, Rational>> vecs;
        std::set<std::pair<int, SMonomial>> keys;
        for (auto& [o, g] : gens_) {
            if (o < d) continue;
            for (auto& m : mons_->of_weight(o - d)) {
                std::map<std::pair<int, SMonomial>, Rational> v;
                for (auto& [s, p] : g.components())
                    for (auto& t : p.terms()) {
                        v[{s, t.m * m}] += t.c;
                        keys.insert({s, t.m * m});
                    }
                vecs.push_back(std::move(v));
            }
        }
        for (auto& k : keys) lvl->coords.id(k);
        for (auto& v : vecs) {
            SparseVec sv;
            for (auto& [k, c] : v)
                if (!c.is_zero()) sv.emplace_back(lvl->coords.find(k), c);
            std::sort(sv.begin(), sv.end(), [](auto& a, auto& b) { return a.first < b.first; });
            lvl->ech.insert(sv);
        }
        return *cache_.emplace(d, std::move(lvl)).first->second;
    }

    std::shared_ptr<MonomialCache> mons_;
    int max_col_;
    std::vector<std::pair<int, VectorField>> gens_;
    std::map<int, std::unique_ptr<Level>> cache_;
};

/// Two-sided membership test of the modules generated by a and b.
inline bool same_module(const std::vector<int>& vars, const std::vector<VectorField>& a,
                        const std::vector<VectorField>& b, int max_col = INT_MAX) {
    auto mons = std::make_shared<MonomialCache>(vars);
    GradedModule ma(mons, a, max_col), mb(mons, b, max_col);
    for (auto& g : b)
        if (!ma.contains(g)) return false;
    for (auto& g : a)
        if (!mb.contains(g)) return false;
    return true;
}

}  // namespace mks
