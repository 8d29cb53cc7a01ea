#pragma once

#include "mks/mpoly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mks {

struct LatticePoint {
    int i = 0, j = 0;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

/// A deformation monomial s_sigma x^a y^b.
struct DeformationTerm {
    int sigma = 0;
    int a = 0, b = 0;
};

/// Combinatorial data of y^k + x^n and its equisingular deformation space.
class CurveFamily {
public:
    CurveFamily(int k, int n) : g_(k, n) {
        for (int i = 0; i <= n - 2; ++i)
            for (int j = 0; j <= k - 2; ++j) basis_.push_back({i, j});
        std::sort(basis_.begin(), basis_.end(),
                  [&](auto& a, auto& b) { return degree(a) < degree(b); });
        omega_ = g_.xy(n - 2, k - 2) - k * n;
        varpi_ = g_.xy(n - k, k - 2) - k * n;
        for (auto& e : basis_) {
            int s = sigma(e);
            if (s <= 0) continue;
            by_sigma_[s] = e;
            I_B_.push_back(s);
            if (e.i + e.j <= n - 2) I_C_.push_back(s);
            if (s <= varpi_) I_D_.push_back(s);
        }
        mu_hat_ = 0;
        for (auto& e : basis_)
            if (e.i + e.j <= n - 2) ++mu_hat_;
    }

    const Grading& grading() const { return g_; }
    int k() const { return g_.k; }
    int n() const { return g_.n; }
    int kn() const { return g_.k * g_.n; }

    /// m_1..m_mu, ordered by strictly increasing weighted degree.
    const std::vector<LatticePoint>& basis() const { return basis_; }
    int degree(const LatticePoint& e) const { return g_.xy(e.i, e.j); }
    int sigma(const LatticePoint& e) const { return degree(e) - kn(); }
    bool in_C(const LatticePoint& e) const { return e.i + e.j <= n() - 2; }

    const std::vector<int>& I_B() const { return I_B_; }
    const std::vector<int>& I_C() const { return I_C_; }
    const std::vector<int>& I_D() const { return I_D_; }
    /// I_B minus I_C.
    std::vector<int> I_BminusC() const {
        std::vector<int> r;
        std::set_difference(I_B_.begin(), I_B_.end(), I_C_.begin(), I_C_.end(), std::back_inserter(r));
        return r;
    }
    LatticePoint point_of(int sigma) const {
        auto it = by_sigma_.find(sigma);
        if (it == by_sigma_.end()) throw std::out_of_range("no deformation monomial of weight " + std::to_string(sigma));
        return it->second;
    }
    bool has_sigma(int sigma) const { return by_sigma_.count(sigma) != 0; }
    /// Position of x^i y^j in the basis, or -1.
    int basis_index(const LatticePoint& e) const {
        if (e.i < 0 || e.j < 0 || e.i > n() - 2 || e.j > k() - 2) return -1;
        auto it = std::lower_bound(basis_.begin(), basis_.end(), e,
                                   [&](auto& a, auto& b) { return degree(a) < degree(b); });
        return static_cast<int>(it - basis_.begin());
    }

    int mu() const { return static_cast<int>(basis_.size()); }
    int mu_hat() const { return mu_hat_; }
    int b() const { return static_cast<int>(I_B_.size()); }
    int omega() const { return omega_; }
    int varpi() const { return varpi_; }

    /// Validates C ⊆ A ⊆ B and returns A sorted.
    std::vector<int> check_subset(std::vector<int> A) const {
        std::sort(A.begin(), A.end());
        A.erase(std::unique(A.begin(), A.end()), A.end());
        for (int s : A)
            if (!has_sigma(s)) throw std::invalid_argument("index " + std::to_string(s) + " is not in I_B");
        if (!std::includes(A.begin(), A.end(), I_C_.begin(), I_C_.end()))
            throw std::invalid_argument("parameter set must contain I_C");
        return A;
    }

    std::vector<DeformationTerm> terms(const std::vector<int>& A) const {
        std::vector<DeformationTerm> r;
        for (int s : check_subset(A)) {
            auto e = point_of(s);
            r.push_back({s, e.i, e.j});
        }
        return r;
    }

    MPoly f() const { return MPoly::y(k()) + MPoly::x(n()); }

    /// F_A = f + sum_{sigma in A} s_sigma m_sigma.
    MPoly deformation_poly(const std::vector<int>& A) const {
        MPoly F = f();
        for (auto& t : terms(A)) F += MPoly::x(t.a) * MPoly::y(t.b) * MPoly::s(t.sigma);
        return F;
    }

private:
    Grading g_;
    std::vector<LatticePoint> basis_;
    std::map<int, LatticePoint> by_sigma_;
    std::vector<int> I_B_, I_C_, I_D_;
    int mu_hat_ = 0, omega_ = 0, varpi_ = 0;
};

inline CurveFamily build_family(int k, int n) { return CurveFamily(k, n); }

}  // namespace mks
