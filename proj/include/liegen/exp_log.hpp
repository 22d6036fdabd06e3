#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "liegen/errors.hpp"
#include "liegen/series.hpp"
#include "liegen/vector_field.hpp"

namespace liegen {

/// Formal diffeomorphism F = id + f tangent to the identity, stored as the
/// displacement f only. Every nonzero displacement component has order
/// >= tangency + 1, i.e. the tangency order of F is at least `tangency`.
class Diffeo {
public:
    Diffeo(int tangency, std::vector<Series> displacement)
        : tangency_(tangency), displacement_(std::move(displacement)) {
        if (displacement_.empty()) throw dimension_error("diffeo needs components");
        if (tangency_ < 1) throw domain_error("tangency order bound must be at least 1");
        const int m = static_cast<int>(displacement_.size());
        const int T = displacement_.front().trunc();
        for (const auto& f : displacement_) {
            if (f.vars() != m)
                throw dimension_error("component variable count must equal component count");
            if (f.trunc() != T)
                throw truncation_error("components must share a truncation");
            if (auto o = order(f); o && *o < tangency_ + 1)
                throw domain_error("displacement order below the declared tangency");
        }
    }

    static Diffeo identity(int m, int tangency, int trunc) {
        return Diffeo(tangency, std::vector<Series>(static_cast<std::size_t>(m), Series(m, trunc)));
    }

    int vars() const { return static_cast<int>(displacement_.size()); }
    /// Declared lower bound for the tangency order (order(displacement) − 1).
    int tangency() const { return tangency_; }
    int trunc() const { return displacement_.front().trunc(); }
    const Series& displacement(int i) const { return displacement_[static_cast<std::size_t>(i)]; }
    const std::vector<Series>& displacements() const { return displacement_; }

    bool operator==(const Diffeo&) const = default;

private:
    int tangency_;
    std::vector<Series> displacement_;
};

/// min over components of order(displacement); nullopt for the identity.
inline std::optional<int> displacement_order(const Diffeo& F) {
    std::optional<int> best;
    for (const auto& f : F.displacements())
        if (auto o = order(f); o && (!best || *o < *best)) best = o;
    return best;
}

inline Diffeo truncate(const Diffeo& F, int new_trunc) {
    std::vector<Series> disp;
    disp.reserve(F.displacements().size());
    for (const auto& f : F.displacements()) disp.push_back(truncate(f, new_trunc));
    return Diffeo(F.tangency(), std::move(disp));
}

/// Time-1 flow of X: component i of the displacement is
/// sum_{j>=1} X^j(x_i)/j!, truncated at N. The sum per degree is finite
/// because order(X^j(x_i)) >= (n−1)j + 1, so powers beyond (N−1)/(n−1)
/// cannot reach degree N.
inline Diffeo exp_field(const VectorField& X, int N) {
    if (X.trunc() < N)
        throw truncation_error("field is not exact to the requested degree");
    const int m = X.vars();
    const int n = X.min_order();
    std::vector<Series> disp(static_cast<std::size_t>(m), Series(m, N));
    const int jmax = N >= n ? (N - 1) / (n - 1) : 0;
    for (int i = 0; i < m; ++i) {
        Series g = Series::variable(m, N, i);
        Rational inv_fact = 1;
        for (int j = 1; j <= jmax; ++j) {
            g = apply(X, truncate(g, N));
            inv_fact /= j;
            disp[static_cast<std::size_t>(i)] =
                add_scale(disp[static_cast<std::size_t>(i)], g, inv_fact);
        }
    }
    return Diffeo(n - 1, std::move(disp));
}

/// Infinitesimal generator: the unique X with exp_field(X, N) = F up to
/// degree N. Built degree by degree; the degree-n part of X equals the
/// degree-n displacement, and for d > n
///   X_d(x_j) = f_{j,d} − Coef_d( sum_{k>=2} X^k(x_j)/k! ),
/// where Coef_d(X^k) only involves parts of X of degree <= d−(k−1)(n−1),
/// all already determined. The powers X^k(x_j) are kept in a cache and
/// extended one degree at a time (ascending k) instead of being recomputed.
inline VectorField log_diffeo(const Diffeo& F, int N) {
    if (F.trunc() < N)
        throw truncation_error("diffeo is not exact to the requested degree");
    const int m = F.vars();
    const int n = F.tangency() + 1;

    std::vector<Series> Xc(static_cast<std::size_t>(m), Series(m, N));
    if (N >= n)
        for (int j = 0; j < m; ++j)
            if (const auto* b = F.displacement(j).bucket(n))
                for (const auto& [a, v] : *b) Xc[static_cast<std::size_t>(j)].set_coeff(a, v);

    struct Power {
        int frontier;               // buckets exact through this degree
        std::vector<Series> comp;   // component j holds X^k(x_j)
    };
    std::vector<Power> cache;       // cache[k-2] holds the power k data

    for (int d = n + 1; d <= N; ++d) {
        const int kmax = (d - 1) / (n - 1);
        for (int k = 2; k <= kmax; ++k) {
            if (static_cast<int>(cache.size()) < k - 1)
                cache.push_back(Power{(k - 1) * (n - 1),
                                      std::vector<Series>(static_cast<std::size_t>(m),
                                                          Series(m, N))});
            Power& P = cache[static_cast<std::size_t>(k - 2)];
            const std::vector<Series>& lower = (k == 2) ? Xc : cache[static_cast<std::size_t>(k - 3)].comp;
            for (int dd = P.frontier + 1; dd <= d; ++dd)
                for (int j = 0; j < m; ++j)
                    detail::apply_bucket_into(P.comp[static_cast<std::size_t>(j)], Xc,
                                              lower[static_cast<std::size_t>(j)], dd);
            P.frontier = d;
        }
        std::vector<Rational> inv_fact(static_cast<std::size_t>(kmax + 1), Rational(1));
        for (int k = 2; k <= kmax; ++k)
            inv_fact[static_cast<std::size_t>(k)] =
                inv_fact[static_cast<std::size_t>(k - 1)] / k;
        for (int j = 0; j < m; ++j) {
            Series& xj = Xc[static_cast<std::size_t>(j)];
            if (const auto* b = F.displacement(j).bucket(d))
                for (const auto& [a, v] : *b) xj.add_coeff(a, v);
            for (int k = 2; k <= kmax; ++k) {
                const Series& pk = cache[static_cast<std::size_t>(k - 2)].comp[static_cast<std::size_t>(j)];
                if (const auto* b = pk.bucket(d)) {
                    const Rational& c = inv_fact[static_cast<std::size_t>(k)];
                    for (const auto& [a, v] : *b) xj.add_coeff(a, -c * v);
                }
            }
        }
    }
    return VectorField(n, std::move(Xc));
}

/// Displacement of F∘G: with F = id + f and G = id + g this is
/// g + f(G), truncated at the common truncation.
inline Diffeo compose(const Diffeo& F, const Diffeo& G) {
    if (F.vars() != G.vars())
        throw dimension_error("diffeos have different variable counts");
    const int m = F.vars();
    const int T = std::min(F.trunc(), G.trunc());
    std::vector<Series> full_G;
    full_G.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        full_G.push_back(add_scale(Series::variable(m, T, i), truncate(G.displacement(i), T), 1));
    std::vector<Series> disp;
    disp.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        disp.push_back(add_scale(truncate(G.displacement(i), T),
                                 substitute(truncate(F.displacement(i), T), full_G), 1));
    return Diffeo(std::min(F.tangency(), G.tangency()), std::move(disp));
}

/// Conjugation by the scaling x -> λx: degree-q displacement coefficients
/// are multiplied by λ^{q−1}. Shrinks the displacement when |λ| < 1.
inline Diffeo scale_conjugate(const Diffeo& F, const Rational& lambda) {
    if (lambda == 0) throw domain_error("scaling factor must be nonzero");
    std::vector<Series> disp;
    disp.reserve(F.displacements().size());
    for (const auto& f : F.displacements()) {
        Series s(F.vars(), F.trunc());
        for (const auto& [q, b] : f.buckets()) {
            const Rational factor = pow_rational(lambda, q - 1);
            for (const auto& [a, v] : b) s.set_coeff(a, factor * v);
        }
        disp.push_back(std::move(s));
    }
    return Diffeo(F.tangency(), std::move(disp));
}

/// Conjugation of a field by the same scaling: λ^{q−1} on degree-q
/// component coefficients (so that Exp and the conjugation commute).
inline VectorField scale_conjugate(const VectorField& X, const Rational& lambda) {
    if (lambda == 0) throw domain_error("scaling factor must be nonzero");
    std::vector<Series> comps;
    comps.reserve(X.components().size());
    for (const auto& c : X.components()) {
        Series s(X.vars(), X.trunc());
        for (const auto& [q, b] : c.buckets()) {
            const Rational factor = pow_rational(lambda, q - 1);
            for (const auto& [a, v] : b) s.set_coeff(a, factor * v);
        }
        comps.push_back(std::move(s));
    }
    return VectorField(X.min_order(), std::move(comps));
}

} // namespace liegen
