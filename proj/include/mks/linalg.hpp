#pragma once

#include "mks/rational.hpp"

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mks {

/// Sparse rational vector: strictly increasing indices, nonzero values.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline SparseVec to_sparse(const std::map<int, Rational>& m) {
    SparseVec v;
    for (auto& [i, c] : m)
        if (!c.is_zero()) v.emplace_back(i, c);
    return v;
}

/// Row echelon basis of a subspace of Q^(index set), pivoting on the smallest index.
/// Remainders are canonical: reduce() returns the unique representative of
/// v + span with zero entries at every pivot index.
class Echelon {
public:
    /// Inserts v; returns true when it enlarged the span.
    bool insert(const SparseVec& v) {
        auto r = reduce(v);
        if (r.empty()) return false;
        Rational lead = r.front().second;
        for (auto& e : r) e.second /= lead;
        int p = r.front().first;
        rows_.emplace(p, std::move(r));
        return true;
    }

    SparseVec reduce(const SparseVec& v) const {
        if (rows_.empty()) return v;
        std::map<int, Rational> acc(v.begin(), v.end());
        auto it = acc.begin();
        while (it != acc.end()) {
            auto pr = rows_.find(it->first);
            if (pr == rows_.end() || it->second.is_zero()) {
                if (it->second.is_zero()) it = acc.erase(it);
                else ++it;
                continue;
            }
            Rational c = it->second;
            int key = it->first;
            for (auto& [j, a] : pr->second) {
                auto [pos, fresh] = acc.try_emplace(j, Rational(0));
                pos->second -= c * a;
            }
            it = acc.upper_bound(key);
            acc.erase(key);
        }
        return to_sparse(acc);
    }

    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    std::size_t rank() const { return rows_.size(); }
    bool has_pivot(int i) const { return rows_.count(i) != 0; }
    const std::map<int, SparseVec>& rows() const { return rows_; }

private:
    std::map<int, SparseVec> rows_;
};

/// Rank of a dense rational matrix.
inline std::size_t rank(const std::vector<std::vector<Rational>>& m) {
    Echelon e;
    for (auto& row : m) {
        SparseVec v;
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero()) v.emplace_back(static_cast<int>(j), row[j]);
        e.insert(v);
    }
    return e.rank();
}

/// Assigns dense consecutive ids to arbitrary ordered keys.
template <class Key>
class IndexMap {
public:
    int id(const Key& k) {
        auto [it, fresh] = ids_.try_emplace(k, static_cast<int>(keys_.size()));
        if (fresh) keys_.push_back(k);
        return it->second;
    }
    int find(const Key& k) const {
        auto it = ids_.find(k);
        return it == ids_.end() ? -1 : it->second;
    }
    const Key& key(int i) const { return keys_[i]; }
    std::size_t size() const { return keys_.size(); }

private:
    std::map<Key, int> ids_;
    std::vector<Key> keys_;
};

}  // namespace mks
