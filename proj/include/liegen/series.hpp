#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "liegen/errors.hpp"
#include "liegen/rational.hpp"

namespace liegen {

/// Exponent vector of a monomial in m variables.
struct MultiIndex {
    std::vector<std::uint32_t> exp;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint32_t> e) : exp(std::move(e)) {}

    int degree() const {
        int d = 0;
        for (auto e : exp) d += static_cast<int>(e);
        return d;
    }
    std::size_t size() const { return exp.size(); }
    std::uint32_t operator[](std::size_t i) const { return exp[i]; }

    // Lexicographic order; buckets hold one total degree each, so map
    // iteration over (degree, index) is graded-lexicographic overall.
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

inline MultiIndex unit_index(int m, int var) {
    std::vector<std::uint32_t> e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(var)] = 1;
    return MultiIndex(std::move(e));
}

/// Truncated formal power series in m variables with exact rational
/// coefficients, stored graded-sparse: one sparse map per total degree.
///
/// The truncation degree is part of the value: coefficients of degree
/// <= trunc are exact, degrees beyond trunc are unknown (not zero).
/// Stored coefficients are never zero. Values are immutable in spirit;
/// the mutators exist for building results and keep the invariants.
class Series {
public:
    using Bucket = std::map<MultiIndex, Rational>;

    Series(int m, int trunc) : m_(m), trunc_(trunc) {
        if (m < 1) throw dimension_error("series needs at least one variable");
        if (trunc < 0) throw truncation_error("negative truncation degree");
    }

    static Series constant(int m, int trunc, const Rational& c) {
        Series s(m, trunc);
        s.set_coeff(MultiIndex(std::vector<std::uint32_t>(static_cast<std::size_t>(m), 0)), c);
        return s;
    }

    /// The coordinate series x_{var} (0-based var).
    static Series variable(int m, int trunc, int var) {
        if (var < 0 || var >= m) throw dimension_error("variable index out of range");
        if (trunc < 1) throw truncation_error("truncation too small to hold a variable");
        Series s(m, trunc);
        s.set_coeff(unit_index(m, var), 1);
        return s;
    }

    int vars() const { return m_; }
    int trunc() const { return trunc_; }
    bool is_zero() const { return buckets_.empty(); }

    const std::map<int, Bucket>& buckets() const { return buckets_; }

    /// Bucket of total degree q, or nullptr when empty. Throws for
    /// q > trunc: that data does not exist.
    const Bucket* bucket(int q) const {
        if (q > trunc_) throw truncation_error("bucket degree exceeds truncation");
        auto it = buckets_.find(q);
        return it == buckets_.end() ? nullptr : &it->second;
    }

    Rational coeff(const MultiIndex& alpha) const {
        check_index(alpha);
        auto itb = buckets_.find(alpha.degree());
        if (itb == buckets_.end()) return Rational(0);
        auto it = itb->second.find(alpha);
        return it == itb->second.end() ? Rational(0) : it->second;
    }

    void set_coeff(const MultiIndex& alpha, Rational c) {
        check_index(alpha);
        const int q = alpha.degree();
        if (c == 0) {
            auto itb = buckets_.find(q);
            if (itb != buckets_.end()) {
                itb->second.erase(alpha);
                if (itb->second.empty()) buckets_.erase(itb);
            }
            return;
        }
        buckets_[q][alpha] = std::move(c);
    }

    void add_coeff(const MultiIndex& alpha, const Rational& c) {
        if (c == 0) return;
        check_index(alpha);
        const int q = alpha.degree();
        Bucket& b = buckets_[q];
        auto [it, inserted] = b.emplace(alpha, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                b.erase(it);
                if (b.empty()) buckets_.erase(q);
            }
        }
    }

    long term_count() const {
        long n = 0;
        for (const auto& [q, b] : buckets_) n += static_cast<long>(b.size());
        return n;
    }

    bool operator==(const Series&) const = default;

private:
    void check_index(const MultiIndex& alpha) const {
        if (static_cast<int>(alpha.size()) != m_)
            throw dimension_error("multi-index length does not match variable count");
        if (alpha.degree() > trunc_)
            throw truncation_error("coefficient degree exceeds truncation");
    }

    int m_;
    int trunc_;
    std::map<int, Bucket> buckets_;
};

namespace detail {

inline void require_same_vars(const Series& f, const Series& g) {
    if (f.vars() != g.vars())
        throw dimension_error("series have different variable counts");
}

/// dest += bf * bg restricted to total degree qf+qg (both buckets homogeneous).
inline void convolve_into(Series& dest, const Series::Bucket& bf, const Series::Bucket& bg) {
    MultiIndex gamma;
    for (const auto& [a, ca] : bf) {
        for (const auto& [b, cb] : bg) {
            gamma.exp.assign(a.exp.begin(), a.exp.end());
            for (std::size_t i = 0; i < gamma.exp.size(); ++i) gamma.exp[i] += b.exp[i];
            dest.add_coeff(gamma, ca * cb);
        }
    }
}

inline void enumerate_degree(int m, int k, std::vector<std::uint32_t>& cur, int pos,
                             const auto& emit) {
    if (pos == m - 1) {
        cur[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(k);
        emit(cur);
        return;
    }
    for (int e = 0; e <= k; ++e) {
        cur[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(e);
        enumerate_degree(m, k - e, cur, pos + 1, emit);
    }
}

} // namespace detail

/// Sum of every monomial of total degree k with unit coefficient;
/// binom(k+m-1, m-1) terms.
inline Series monomial_sum(int k, int m, int trunc) {
    if (k < 0) throw domain_error("negative degree");
    if (k > trunc) throw truncation_error("requested degree exceeds truncation");
    Series s(m, trunc);
    std::vector<std::uint32_t> cur(static_cast<std::size_t>(m), 0);
    detail::enumerate_degree(m, k, cur, 0, [&](const std::vector<std::uint32_t>& e) {
        s.set_coeff(MultiIndex(e), 1);
    });
    return s;
}

/// f + c*g, truncated at min(f.trunc, g.trunc).
inline Series add_scale(const Series& f, const Series& g, const Rational& c) {
    detail::require_same_vars(f, g);
    const int T = std::min(f.trunc(), g.trunc());
    Series r(f.vars(), T);
    for (const auto& [q, b] : f.buckets()) {
        if (q > T) break;
        for (const auto& [a, v] : b) r.set_coeff(a, v);
    }
    if (c != 0) {
        for (const auto& [q, b] : g.buckets()) {
            if (q > T) break;
            for (const auto& [a, v] : b) r.add_coeff(a, c * v);
        }
    }
    return r;
}

inline Series scale(const Series& f, const Rational& c) {
    Series r(f.vars(), f.trunc());
    if (c == 0) return r;
    for (const auto& [q, b] : f.buckets())
        for (const auto& [a, v] : b) r.set_coeff(a, c * v);
    return r;
}

/// Truncated Cauchy product at min(f.trunc, g.trunc). Bucket q of the
/// result only reads buckets i and q-i of the factors.
inline Series mul(const Series& f, const Series& g) {
    detail::require_same_vars(f, g);
    const int T = std::min(f.trunc(), g.trunc());
    Series r(f.vars(), T);
    for (const auto& [qf, bf] : f.buckets()) {
        if (qf > T) break;
        for (const auto& [qg, bg] : g.buckets()) {
            if (qf + qg > T) break;
            detail::convolve_into(r, bf, bg);
        }
    }
    return r;
}

/// Partial derivative with respect to variable var, truncation drops by one.
inline Series partial(const Series& f, int var) {
    if (var < 0 || var >= f.vars()) throw dimension_error("variable index out of range");
    Series r(f.vars(), std::max(f.trunc() - 1, 0));
    for (const auto& [q, b] : f.buckets()) {
        if (q == 0) continue;
        for (const auto& [a, v] : b) {
            const std::uint32_t e = a[static_cast<std::size_t>(var)];
            if (e == 0) continue;
            MultiIndex beta = a;
            beta.exp[static_cast<std::size_t>(var)] = e - 1;
            r.add_coeff(beta, v * static_cast<long>(e));
        }
    }
    return r;
}

/// The summed derivation d/dx_1 + ... + d/dx_m.
inline Series diff_sum(const Series& f) {
    Series r(f.vars(), std::max(f.trunc() - 1, 0));
    for (const auto& [q, b] : f.buckets()) {
        if (q == 0) continue;
        for (const auto& [a, v] : b) {
            for (std::size_t k = 0; k < a.size(); ++k) {
                const std::uint32_t e = a[k];
                if (e == 0) continue;
                MultiIndex beta = a;
                beta.exp[k] = e - 1;
                r.add_coeff(beta, v * static_cast<long>(e));
            }
        }
    }
    return r;
}

/// Lowest degree with a nonzero coefficient; nullopt for the zero series
/// (which is only "zero up to trunc", so it gets a distinct marker
/// rather than trunc+1).
inline std::optional<int> order(const Series& f) {
    if (f.buckets().empty()) return std::nullopt;
    return f.buckets().begin()->first;
}

/// The homogeneous part of degree q, kept at f's truncation.
inline Series homogeneous_part(const Series& f, int q) {
    if (q > f.trunc()) throw truncation_error("degree exceeds truncation");
    Series r(f.vars(), f.trunc());
    if (const auto* b = f.bucket(q))
        for (const auto& [a, v] : *b) r.set_coeff(a, v);
    return r;
}

/// Restriction to a smaller truncation degree.
inline Series truncate(const Series& f, int new_trunc) {
    if (new_trunc > f.trunc())
        throw truncation_error("cannot extend truncation: higher coefficients are unknown");
    if (new_trunc == f.trunc()) return f;
    Series r(f.vars(), new_trunc);
    for (const auto& [q, b] : f.buckets()) {
        if (q > new_trunc) break;
        for (const auto& [a, v] : b) r.set_coeff(a, v);
    }
    return r;
}

/// f(G_1, ..., G_m), truncated at the common truncation. Every G_i must
/// have order >= 1; a constant term would make the truncated composition
/// meaningless.
inline Series substitute(const Series& f, const std::vector<Series>& G) {
    if (static_cast<int>(G.size()) != f.vars())
        throw dimension_error("substitution needs one series per variable");
    for (const auto& gi : G) {
        detail::require_same_vars(f, gi);
        if (gi.trunc() != G.front().trunc())
            throw truncation_error("substitution components must share a truncation");
        if (auto o = order(gi); o && *o < 1)
            throw substitution_error("substitution component has a constant term");
    }
    const int m = f.vars();
    const int T = std::min(f.trunc(), G.front().trunc());
    // Power tables, grown on demand: pows[i][e] = G_i^e at truncation T.
    std::vector<std::vector<Series>> pows(static_cast<std::size_t>(m));
    auto power_of = [&](int i, std::uint32_t e) -> const Series& {
        auto& tab = pows[static_cast<std::size_t>(i)];
        if (tab.empty()) tab.push_back(Series::constant(m, T, 1));
        while (tab.size() <= e) tab.push_back(mul(tab.back(), truncate(G[static_cast<std::size_t>(i)], T)));
        return tab[e];
    };
    Series r(m, T);
    for (const auto& [q, b] : f.buckets()) {
        if (q > T) break;
        for (const auto& [a, c] : b) {
            Series term = Series::constant(m, T, 1);
            bool vanished = false;
            for (int i = 0; i < m && !vanished; ++i) {
                const std::uint32_t e = a[static_cast<std::size_t>(i)];
                if (e == 0) continue;
                const Series& p = power_of(i, e);
                if (p.is_zero()) {
                    vanished = true;
                    break;
                }
                term = mul(term, p);
            }
            if (!vanished) r = add_scale(r, term, c);
        }
    }
    return r;
}

} // namespace liegen
