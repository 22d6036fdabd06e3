#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "liegen/errors.hpp"
#include "liegen/series.hpp"

namespace liegen {

/// Parameters (s, a, m, n) of the majorant family
/// sum_{q>=n} (q+m-n)!^s a^q h_q(x), where h_q sums the degree-q monomials.
struct GevreyParams {
    Rational s;  // nonnegative, kept canonical p/d by the rational type
    Rational a;  // positive radius parameter
    int m;
    int n;

    GevreyParams(Rational s_, Rational a_, int m_, int n_)
        : s(std::move(s_)), a(std::move(a_)), m(m_), n(n_) {
        if (s < 0) throw domain_error("Gevrey exponent must be nonnegative");
        if (a <= 0) throw domain_error("radius parameter must be positive");
        if (m < 1 || n < 2) throw domain_error("need m >= 1 and n >= 2");
    }
};

/// Coefficient-wise domination |f_alpha| <= |g_alpha| for all degrees up to
/// the common truncation (absent coefficients read as zero).
inline bool precedes(const Series& f, const Series& g) {
    if (f.vars() != g.vars())
        throw dimension_error("series have different variable counts");
    const int T = std::min(f.trunc(), g.trunc());
    for (const auto& [q, b] : f.buckets()) {
        if (q > T) break;
        for (const auto& [alpha, v] : b)
            if (abs(v) > abs(g.coeff(alpha))) return false;
    }
    return true;
}

/// Exact test of |f_alpha| <= (q+m-n)!^s a^q for every stored alpha of
/// degree q. With s = p/d both sides are compared after raising to the
/// d-th power, keeping everything rational. Nonzero coefficients below
/// degree n fail the test outright (the family starts at degree n).
inline bool gevrey_dominated(const Series& f, const GevreyParams& P) {
    if (f.vars() != P.m)
        throw dimension_error("series variable count does not match parameters");
    const unsigned long p = static_cast<unsigned long>(mpz_get_ui(P.s.get_num().get_mpz_t()));
    const unsigned long d = static_cast<unsigned long>(mpz_get_ui(P.s.get_den().get_mpz_t()));
    for (const auto& [q, b] : f.buckets()) {
        if (q < P.n) return false;
        const Rational bound_d =
            Rational(pow_int(factorial(static_cast<unsigned long>(q + P.m - P.n)), p)) *
            pow_rational(P.a, static_cast<long>(static_cast<unsigned long>(q) * d));
        for (const auto& [alpha, v] : b) {
            (void)alpha;
            if (pow_rational(abs(v), static_cast<long>(d)) > bound_d) return false;
        }
    }
    return true;
}

/// Smallest dyadic radius a (within relative slack 2^-20) such that f is
/// dominated with exponent s at family order n; binary search driven by
/// the exact domination test. Returns nullopt when coefficients below
/// degree n block every radius; the zero series returns the conventional
/// floor 2^-20.
inline std::optional<Rational> find_gevrey_radius(const Series& f, const Rational& s, int n) {
    static const Rational floor_radius = Rational(1, 1048576);    // 2^-20
    static const Rational slack = Rational(1048577, 1048576);     // 1 + 2^-20
    if (auto o = order(f); o && *o < n) return std::nullopt;
    if (f.is_zero()) return floor_radius;
    auto ok = [&](const Rational& a) {
        return gevrey_dominated(f, GevreyParams(s, a, f.vars(), n));
    };
    Rational lo, hi;
    if (ok(1)) {
        hi = 1;
        lo = Rational(1, 2);
        while (ok(lo)) {
            hi = lo;
            lo /= 2;
        }
    } else {
        lo = 1;
        hi = 2;
        while (!ok(hi)) {
            lo = hi;
            hi *= 2;
        }
    }
    while (hi > lo * slack) {
        Rational mid = (lo + hi) / 2;
        if (ok(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

/// Least-squares estimate of (s, a) in the growth model
/// log M_q ~ s*log(q!) + q*log(a) + c, with M_q the largest absolute
/// coefficient of degree q.
struct FitResult {
    double s_hat;
    double a_hat;
    double residual;      // RMS of the fit residuals
    int q_lo;             // degree range actually used
    int q_hi;
    int degrees_used;     // number of degrees with a nonzero M_q
};

inline FitResult gevrey_fit(const std::vector<Series>& components, int q_min, int q_max) {
    if (components.empty()) throw dimension_error("fit needs at least one series");
    if (q_min < 0 || q_min > q_max) throw domain_error("bad degree range");
    for (const auto& f : components)
        if (q_max > f.trunc())
            throw truncation_error("fit range exceeds the series truncation");
    std::vector<double> L;   // log(q!)
    std::vector<double> Q;   // q
    std::vector<double> Y;   // log M_q
    double logfact = 0.0;
    for (int i = 2; i <= q_min; ++i) logfact += std::log(static_cast<double>(i));
    int lo = 0, hi = 0;
    for (int q = q_min; q <= q_max; ++q) {
        if (q > q_min) logfact += std::log(static_cast<double>(q));
        Rational mx = 0;
        for (const auto& f : components) {
            const Series::Bucket* b = f.bucket(q);
            if (!b) continue;
            for (const auto& [alpha, v] : *b) {
                Rational av = abs(v);
                if (av > mx) mx = av;
            }
        }
        if (mx == 0) continue;
        if (L.empty()) lo = q;
        hi = q;
        L.push_back(logfact);
        Q.push_back(static_cast<double>(q));
        Y.push_back(log_abs(mx));
    }
    const int used = static_cast<int>(L.size());
    if (used < 5)
        throw insufficient_data_error("need at least five degrees with nonzero coefficients");

    // Normal equations for y = s*L + b*q + c, solved by Gaussian elimination
    // in long double.
    long double A[3][4] = {};
    for (int i = 0; i < used; ++i) {
        const long double row[3] = {static_cast<long double>(L[static_cast<std::size_t>(i)]),
                                    static_cast<long double>(Q[static_cast<std::size_t>(i)]),
                                    1.0L};
        const long double y = static_cast<long double>(Y[static_cast<std::size_t>(i)]);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) A[r][c] += row[r] * row[c];
            A[r][3] += row[r] * y;
        }
    }
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(static_cast<double>(A[r][col])) >
                std::abs(static_cast<double>(A[piv][col])))
                piv = r;
        for (int c = 0; c < 4; ++c) std::swap(A[col][c], A[piv][c]);
        if (A[col][col] == 0.0L)
            throw insufficient_data_error("degenerate fit system (constant degrees?)");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const long double k = A[r][col] / A[col][col];
            for (int c = col; c < 4; ++c) A[r][c] -= k * A[col][c];
        }
    }
    const double s_hat = static_cast<double>(A[0][3] / A[0][0]);
    const double b_hat = static_cast<double>(A[1][3] / A[1][1]);
    const double c_hat = static_cast<double>(A[2][3] / A[2][2]);
    long double ss = 0.0L;
    for (int i = 0; i < used; ++i) {
        const long double r = static_cast<long double>(Y[static_cast<std::size_t>(i)]) -
                              (static_cast<long double>(s_hat) * L[static_cast<std::size_t>(i)] +
                               static_cast<long double>(b_hat) * Q[static_cast<std::size_t>(i)] +
                               static_cast<long double>(c_hat));
        ss += r * r;
    }
    return FitResult{s_hat, std::exp(b_hat),
                     std::sqrt(static_cast<double>(ss) / static_cast<double>(used)), lo, hi,
                     used};
}

inline FitResult gevrey_fit(const Series& f, int q_min, int q_max) {
    return gevrey_fit(std::vector<Series>{f}, q_min, q_max);
}

/// The majorant series itself, materialized exactly up to degree N. Only
/// integer exponents admit rational coefficients; other exponents are
/// rejected (use the domination test instead).
inline Series gevrey_envelope(const GevreyParams& P, int N) {
    if (!is_integer(P.s))
        throw domain_error("envelope series is only exact for integer exponents");
    const unsigned long si = static_cast<unsigned long>(mpz_get_ui(P.s.get_num().get_mpz_t()));
    Series r(P.m, N);
    for (int q = P.n; q <= N; ++q) {
        const Rational coeff =
            Rational(pow_int(factorial(static_cast<unsigned long>(q + P.m - P.n)), si)) *
            pow_rational(P.a, q);
        Series hq = monomial_sum(q, P.m, N);
        r = add_scale(r, hq, coeff);
    }
    return r;
}

} // namespace liegen
