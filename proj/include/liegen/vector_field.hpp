#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "liegen/errors.hpp"
#include "liegen/series.hpp"

namespace liegen {

/// Formal vector field X = sum_k X(x_k) d/dx_k whose components all have
/// order >= n (the declared minimum order). Component k stores X(x_k).
class VectorField {
public:
    VectorField(int n, std::vector<Series> components)
        : n_(n), components_(std::move(components)) {
        if (components_.empty()) throw dimension_error("vector field needs components");
        if (n_ < 2) throw domain_error("vector field order bound must be at least 2");
        const int m = static_cast<int>(components_.size());
        const int T = components_.front().trunc();
        // shape first, so a wrong-sized component is reported as such even
        // when an earlier component also violates the order bound
        for (const auto& c : components_) {
            if (c.vars() != m)
                throw dimension_error("component variable count must equal component count");
            if (c.trunc() != T)
                throw truncation_error("components must share a truncation");
        }
        for (const auto& c : components_) {
            if (auto o = order(c); o && *o < n_)
                throw domain_error("component order below the declared field order");
        }
    }

    static VectorField zero(int m, int n, int trunc) {
        return VectorField(n, std::vector<Series>(static_cast<std::size_t>(m), Series(m, trunc)));
    }

    int vars() const { return static_cast<int>(components_.size()); }
    /// Declared lower bound for the field order (actual order may exceed it).
    int min_order() const { return n_; }
    int trunc() const { return components_.front().trunc(); }
    const Series& component(int k) const { return components_[static_cast<std::size_t>(k)]; }
    const std::vector<Series>& components() const { return components_; }

    bool operator==(const VectorField&) const = default;

private:
    int n_;
    std::vector<Series> components_;
};

/// min over components of order(); nullopt for the zero field.
inline std::optional<int> field_order(const VectorField& X) {
    std::optional<int> best;
    for (const auto& c : X.components())
        if (auto o = order(c); o && (!best || *o < *best)) best = o;
    return best;
}

namespace detail {

/// Adds the degree-d homogeneous part of X(h) = sum_c X(x_c)·dh/dx_c into
/// dest, reading component buckets p <= d and h buckets d+1-p. Exact as
/// long as those inputs are exact; callers own that bookkeeping.
inline void apply_bucket_into(Series& dest, const std::vector<Series>& comps,
                              const Series& h, int d) {
    const int m = static_cast<int>(comps.size());
    MultiIndex gamma;
    for (int c = 0; c < m; ++c) {
        for (const auto& [p, bp] : comps[static_cast<std::size_t>(c)].buckets()) {
            if (p > d) break;
            const int e = d + 1 - p;
            if (e < 1 || e > h.trunc()) continue;
            const Series::Bucket* bh = h.bucket(e);
            if (!bh) continue;
            for (const auto& [beta, vb] : *bh) {
                const std::uint32_t ec = beta[static_cast<std::size_t>(c)];
                if (ec == 0) continue;
                for (const auto& [alpha, va] : bp) {
                    gamma.exp.assign(alpha.exp.begin(), alpha.exp.end());
                    for (std::size_t i = 0; i < gamma.exp.size(); ++i)
                        gamma.exp[i] += beta.exp[i];
                    gamma.exp[static_cast<std::size_t>(c)] -= 1;
                    dest.add_coeff(gamma, va * vb * static_cast<long>(ec));
                }
            }
        }
    }
}

} // namespace detail

/// X(g) = sum_k X(x_k)·dg/dx_k, exact to min(X.trunc, g.trunc + n − 1):
/// degree-d output only involves component parts of degree >= n, hence g
/// parts of degree <= d+1−n.
inline Series apply(const VectorField& X, const Series& g) {
    if (X.vars() != g.vars())
        throw dimension_error("field and series have different variable counts");
    if (g.trunc() < X.min_order())
        throw truncation_error("series truncation below the field order");
    const int T = std::min(X.trunc(), g.trunc() + X.min_order() - 1);
    Series r(X.vars(), T);
    for (int d = 1; d <= T; ++d) detail::apply_bucket_into(r, X.components(), g, d);
    return r;
}

/// j-fold iterate X^j(g); j = 0 returns g. Each application raises the
/// order by at least n−1, so order(X^j(x_i)) >= (n−1)j + 1.
inline Series power_apply(const VectorField& X, int j, const Series& g) {
    if (j < 0) throw domain_error("negative iteration count");
    Series r = g;
    for (int i = 0; i < j; ++i) r = apply(X, r);
    return r;
}

inline VectorField scale_field(const VectorField& X, const Rational& c) {
    std::vector<Series> comps;
    comps.reserve(X.components().size());
    for (const auto& s : X.components()) comps.push_back(scale(s, c));
    return VectorField(X.min_order(), std::move(comps));
}

inline VectorField truncate(const VectorField& X, int new_trunc) {
    std::vector<Series> comps;
    comps.reserve(X.components().size());
    for (const auto& s : X.components()) comps.push_back(truncate(s, new_trunc));
    return VectorField(X.min_order(), std::move(comps));
}

} // namespace liegen
