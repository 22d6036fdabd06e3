#pragma once

#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "liegen/errors.hpp"
#include "liegen/exp_log.hpp"
#include "liegen/interval.hpp"
#include "liegen/majorant.hpp"
#include "liegen/rational.hpp"
#include "liegen/series.hpp"
#include "liegen/vector_field.hpp"

namespace liegen {

struct PrecisionConfig {
    int significant_digits = 50;
    double tail_tolerance = 1e-40;
};

inline mpfr_prec_t bits_for(const PrecisionConfig& cfg) {
    if (cfg.significant_digits < 15)
        throw domain_error("precision below 15 significant digits");
    if (!(cfg.tail_tolerance > 0))
        throw domain_error("tail tolerance must be positive");
    return static_cast<mpfr_prec_t>(static_cast<double>(cfg.significant_digits) * 3.3219280948873626) + 17;
}

struct Violation {
    std::string where;
    double lhs;
    double rhs;
};

struct MarginStats {
    long checks = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    double max_margin = -std::numeric_limits<double>::infinity();
    std::string min_at;

    void record(const std::string& where, double margin) {
        ++checks;
        if (margin < min_margin) {
            min_margin = margin;
            min_at = where;
        }
        if (margin > max_margin) max_margin = margin;
    }
};

/// Outcome of a finite verification sweep. `passed` tracks bound
/// violations only; a failed precondition (hypothesis not satisfied,
/// smallness condition broken) is reported separately because it means
/// the check did not apply, not that the bound failed.
struct BoundsReport {
    std::string name;
    std::string range;
    std::vector<Violation> violations;
    bool passed = true;
    MarginStats margins;
    bool precondition_ok = true;
    std::string note;

    void check(const std::string& where, double lhs, double rhs, bool ok) {
        margins.record(where, rhs - lhs);
        if (!ok) {
            violations.push_back(Violation{where, lhs, rhs});
            passed = false;
        }
    }
    bool ok() const { return precondition_ok && passed; }
};

/// Exact dyadic value of an mpfr number.
inline Rational rational_from_mpfr(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return Rational(0);
    if (!mpfr_number_p(x)) throw domain_error("cannot convert a non-finite value");
    mpz_class z;
    mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x);
    if (e >= 0) return Rational(z * pow_int(2, static_cast<unsigned long>(e)));
    return make_rational(z, pow_int(2, static_cast<unsigned long>(-e)));
}

// ---------------------------------------------------------------------------
// Theta: sum_{j>=n} binom(m-1+j, m-1) y^{j-n}, convergent for 0 < y < 1.
// ---------------------------------------------------------------------------

/// Closed form: the full binomial series sums to (1-y)^{-m}, so
/// Theta(y) = y^{-n} [ (1-y)^{-m} - sum_{j<n} binom(m-1+j, m-1) y^j ].
inline Rational theta_exact(const Rational& y, int m, int n) {
    if (m < 1 || n < 1) throw domain_error("need m >= 1 and n >= 1");
    if (y <= 0 || y >= 1) throw domain_error("argument must lie in (0,1)");
    Rational head = 0;
    for (int j = 0; j < n; ++j)
        head += Rational(binomial(static_cast<unsigned long>(m - 1 + j),
                                  static_cast<unsigned long>(m - 1))) *
                pow_rational(y, j);
    return (pow_rational(1 - y, -m) - head) * pow_rational(y, -n);
}

/// Direct summation with a geometric tail bound: the term ratio
/// y(m+j)/(j+1) is nonincreasing in j, so once it drops below one the tail
/// after term_j is at most term_j * rho/(1-rho).
inline Interval theta_sum(const Interval& y, int m, int n, const PrecisionConfig& cfg) {
    if (m < 1 || n < 1) throw domain_error("need m >= 1 and n >= 1");
    if (!y.positive() || mpfr_cmp_ui(y.hi(), 1) >= 0)
        throw domain_error("argument must lie in (0,1)");
    const mpfr_prec_t prec = bits_for(cfg);
    Interval sum(prec);
    Interval term = Interval::from_integer(
        binomial(static_cast<unsigned long>(m - 1 + n), static_cast<unsigned long>(m - 1)), prec);
    Real rho(prec), tail(prec), t(prec);
    for (long j = n;; ++j) {
        sum = add(sum, term);
        // rho >= every later term ratio y(m+i)/(i+1), i >= j
        mpfr_mul_ui(rho.get(), y.hi(), static_cast<unsigned long>(m + j), MPFR_RNDU);
        mpfr_div_ui(rho.get(), rho.get(), static_cast<unsigned long>(j + 1), MPFR_RNDU);
        if (mpfr_cmp_ui(rho.get(), 1) < 0) {
            // tail <= term.hi * rho/(1-rho)
            mpfr_ui_sub(t.get(), 1, rho.get(), MPFR_RNDD);
            mpfr_mul(tail.get(), term.hi(), rho.get(), MPFR_RNDU);
            mpfr_div(tail.get(), tail.get(), t.get(), MPFR_RNDU);
            if (mpfr_cmp_d(tail.get(), cfg.tail_tolerance) < 0) {
                mpfr_add(sum.hi(), sum.hi(), tail.get(), MPFR_RNDU);
                return sum;
            }
        }
        term = mul(term, y);
        term = mul(term, Interval::from_rational(make_rational(m + j, j + 1), prec));
        if (j > 100000000L)
            throw inconclusive_error("theta summation failed to reach the tail tolerance");
    }
}

/// max{1/2, m/(m+n-1)}, always < 1.
inline Rational c_mn(int m, int n) {
    if (m < 1 || n < 2) throw domain_error("need m >= 1 and n >= 2");
    Rational half(1, 2), other = make_rational(m, m + n - 1);
    return other > half ? other : half;
}

// ---------------------------------------------------------------------------
// b_q and its uniform bound.
// ---------------------------------------------------------------------------

namespace detail {

/// One-sided evaluation of
///   b_q = sum_{j=n}^{floor((q+1)/2)} ratio_j^s binom(j+m-1, m-1),
///   ratio_j = (j+m-n)! (q-j+1+m-n)! (q-j+m)^{n-1} / (m! (q+m-n)!),
/// with every operation rounded in direction `rnd` (all quantities are
/// positive and each step is monotone, so RNDU yields an upper bound and
/// RNDD a lower bound). The ratio is advanced incrementally,
///   ratio_{j+1}/ratio_j = (j+1+m-n)/(q-j+1+m-n) * ((q-j+m-1)/(q-j+m))^{n-1},
/// which keeps the astronomically large factorials out of the loop.
inline void bq_bound(mpfr_ptr out, int m, int n, const Rational& s, long q, mpfr_rnd_t rnd) {
    if (m < 1 || n < 2) throw domain_error("need m >= 1 and n >= 2");
    if (q < 2L * n - 1) throw domain_error("degree below the first admissible value");
    const unsigned long sp = mpz_get_ui(s.get_num().get_mpz_t());
    const unsigned long sd = mpz_get_ui(s.get_den().get_mpz_t());
    const long jmax = (q + 1) / 2;
    const mpfr_prec_t prec = mpfr_get_prec(out);

    Real ratio(prec), term(prec);
    // ratio at j = n: (q-n+m)^{n-1} / prod_{i=q+2+m-2n}^{q+m-n} i
    mpz_class zbuf;
    mpz_ui_pow_ui(zbuf.get_mpz_t(), static_cast<unsigned long>(q - n + m),
                  static_cast<unsigned long>(n - 1));
    mpfr_set_z(ratio.get(), zbuf.get_mpz_t(), rnd);
    for (long i = q + 2 + m - 2 * n; i <= q + m - n; ++i)
        mpfr_div_ui(ratio.get(), ratio.get(), static_cast<unsigned long>(i), rnd);

    mpz_class binom_j = binomial(static_cast<unsigned long>(n + m - 1),
                                 static_cast<unsigned long>(m - 1));
    mpfr_set_zero(out, 1);
    for (long j = n; j <= jmax; ++j) {
        if (sd == 1) {
            mpfr_pow_ui(term.get(), ratio.get(), sp, rnd);
        } else {
            mpfr_rootn_ui(term.get(), ratio.get(), sd, rnd);
            if (sp != 1) mpfr_pow_ui(term.get(), term.get(), sp, rnd);
        }
        mpfr_mul_z(term.get(), term.get(), binom_j.get_mpz_t(), rnd);
        mpfr_add(out, out, term.get(), rnd);
        if (j == jmax) break;
        mpfr_mul_ui(ratio.get(), ratio.get(), static_cast<unsigned long>(j + 1 + m - n), rnd);
        mpfr_div_ui(ratio.get(), ratio.get(), static_cast<unsigned long>(q - j + 1 + m - n), rnd);
        mpz_ui_pow_ui(zbuf.get_mpz_t(), static_cast<unsigned long>(q - j + m - 1),
                      static_cast<unsigned long>(n - 1));
        mpfr_mul_z(ratio.get(), ratio.get(), zbuf.get_mpz_t(), rnd);
        mpz_ui_pow_ui(zbuf.get_mpz_t(), static_cast<unsigned long>(q - j + m),
                      static_cast<unsigned long>(n - 1));
        mpfr_div_z(ratio.get(), ratio.get(), zbuf.get_mpz_t(), rnd);
        mpz_mul_ui(binom_j.get_mpz_t(), binom_j.get_mpz_t(), static_cast<unsigned long>(j + m));
        mpz_divexact_ui(binom_j.get_mpz_t(), binom_j.get_mpz_t(), static_cast<unsigned long>(j + 1));
    }
}

} // namespace detail

/// Two-sided enclosure of b_q.
inline Interval b_q_enclosure(int m, int n, const Rational& s, long q, const PrecisionConfig& cfg) {
    if (s < 0) throw domain_error("exponent must be nonnegative");
    Interval r(bits_for(cfg));
    detail::bq_bound(r.lo(), m, n, s, q, MPFR_RNDD);
    detail::bq_bound(r.hi(), m, n, s, q, MPFR_RNDU);
    return r;
}

/// Exact rational value of b_q, available when s is a nonnegative integer.
inline Rational b_q_exact(int m, int n, const Rational& s, long q) {
    if (m < 1 || n < 2) throw domain_error("need m >= 1 and n >= 2");
    if (!is_integer(s) || s < 0)
        throw domain_error("exact evaluation needs a nonnegative integer exponent");
    if (q < 2L * n - 1) throw domain_error("degree below the first admissible value");
    const unsigned long si = mpz_get_ui(s.get_num().get_mpz_t());
    Rational sum = 0;
    const Rational denom = Rational(factorial(static_cast<unsigned long>(m))) *
                           factorial(static_cast<unsigned long>(q + m - n));
    for (long j = n; j <= (q + 1) / 2; ++j) {
        Rational ratio = Rational(factorial(static_cast<unsigned long>(j + m - n))) *
                         factorial(static_cast<unsigned long>(q - j + 1 + m - n)) *
                         pow_int(q - j + m, static_cast<unsigned long>(n - 1)) / denom;
        sum += pow_rational(ratio, static_cast<long>(si)) *
               binomial(static_cast<unsigned long>(j + m - 1), static_cast<unsigned long>(m - 1));
    }
    return sum;
}

// ---------------------------------------------------------------------------
// The constant A = 2 m!^s ((m+n-1)/(m+1))^{s(n-1)} Theta(C_{m,n}^s).
// ---------------------------------------------------------------------------

inline Rational a_const_exact(int m, int n, const Rational& s) {
    if (!is_integer(s) || s <= 0)
        throw domain_error("exact evaluation needs a positive integer exponent");
    const long si = static_cast<long>(mpz_get_ui(s.get_num().get_mpz_t()));
    const Rational ratio_pow =
        pow_rational(make_rational(m + n - 1, m + 1), si * (n - 1));
    const Rational cs = pow_rational(c_mn(m, n), si);
    return Rational(2) * pow_rational(Rational(factorial(static_cast<unsigned long>(m))), si) *
           ratio_pow * theta_exact(cs, m, n);
}

inline Interval a_const_enclosure(int m, int n, const Rational& s, const PrecisionConfig& cfg) {
    if (s <= 0) throw domain_error("exponent must be positive");
    const mpfr_prec_t prec = bits_for(cfg);
    if (is_integer(s)) return Interval::from_rational(a_const_exact(m, n, s), prec);
    const Rational t = s * (n - 1);
    Interval ratio_pow =
        pow_iv(Interval::from_rational(make_rational(m + n - 1, m + 1), prec), t, prec);
    Interval cs = pow_iv(Interval::from_rational(c_mn(m, n), prec), s, prec);
    Interval th = theta_sum(cs, m, n, cfg);
    Interval mfact = pow_iv(Interval::from_integer(factorial(static_cast<unsigned long>(m)), prec),
                            s, prec);
    return mul(Interval::from_long(2, prec), mul(mfact, mul(ratio_pow, th)));
}

// ---------------------------------------------------------------------------
// Uniform bound on b_q: b_q < ((m+n-1)/(m+1))^{s(n-1)} Theta(C_{m,n}^s).
// ---------------------------------------------------------------------------

inline BoundsReport check_bq_bounded(int m, int n, const Rational& s, long Q,
                                     const PrecisionConfig& cfg = {}) {
    if (Q < 2L * n - 1) throw domain_error("sweep must reach at least the first admissible degree");
    if (s < 0) throw domain_error("exponent must be nonnegative");
    const mpfr_prec_t prec = bits_for(cfg);
    BoundsReport rep;
    rep.name = "bq-bounded";
    {
        std::ostringstream os;
        os << "m=" << m << " n=" << n << " s=" << rational_to_string(s) << " q=" << (2 * n - 1)
           << ".." << Q;
        rep.range = os.str();
    }
    // lower endpoint of the bound, so a pass is conservative
    Real bound_lo(prec);
    if (is_integer(s) && s > 0) {
        const long si = static_cast<long>(mpz_get_ui(s.get_num().get_mpz_t()));
        const Rational bound = pow_rational(make_rational(m + n - 1, m + 1), si * (n - 1)) *
                               theta_exact(pow_rational(c_mn(m, n), si), m, n);
        mpfr_set_q(bound_lo.get(), bound.get_mpq_t(), MPFR_RNDD);
    } else {
        const Rational t = s * (n - 1);
        Interval ratio_pow =
            pow_iv(Interval::from_rational(make_rational(m + n - 1, m + 1), prec), t, prec);
        Interval cs = pow_iv(Interval::from_rational(c_mn(m, n), prec), s, prec);
        Interval bound = mul(ratio_pow, theta_sum(cs, m, n, cfg));
        mpfr_set(bound_lo.get(), bound.lo(), MPFR_RNDD);
    }
    {
        std::ostringstream os;
        os << "bound >= " << bound_lo.to_double();
        rep.note = os.str();
    }
    Real bq(prec);
    for (long q = 2L * n - 1; q <= Q; ++q) {
        detail::bq_bound(bq.get(), m, n, s, q, MPFR_RNDU);
        std::ostringstream os;
        os << "q=" << q;
        rep.check(os.str(), bq.to_double(), bound_lo.to_double(),
                  mpfr_cmp(bq.get(), bound_lo.get()) < 0);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Envelope objects: series saturating (q+m-n)!^s a^q on every monomial.
// ---------------------------------------------------------------------------

/// Fractional-exponent envelope, materialized with coefficients rounded
/// DOWN to dyadic rationals: the result still satisfies the Gevrey
/// hypothesis exactly while staying within one rounding step of it.
inline Series gevrey_envelope_dyadic(const GevreyParams& P, int N, mpfr_prec_t bits = 96) {
    Series r(P.m, N);
    const unsigned long sp = mpz_get_ui(P.s.get_num().get_mpz_t());
    const unsigned long sd = mpz_get_ui(P.s.get_den().get_mpz_t());
    Real v(bits);
    for (int q = P.n; q <= N; ++q) {
        mpfr_set_z(v.get(), factorial(static_cast<unsigned long>(q + P.m - P.n)).get_mpz_t(),
                   MPFR_RNDD);
        if (sd == 1) {
            mpfr_pow_ui(v.get(), v.get(), sp, MPFR_RNDD);
        } else {
            mpfr_rootn_ui(v.get(), v.get(), sd, MPFR_RNDD);
            if (sp != 1) mpfr_pow_ui(v.get(), v.get(), sp, MPFR_RNDD);
        }
        mpfr_mul_q(v.get(), v.get(), pow_rational(P.a, q).get_mpq_t(), MPFR_RNDD);
        const Rational c = rational_from_mpfr(v.get());
        r = add_scale(r, monomial_sum(q, P.m, N), c);
    }
    return r;
}

/// Field whose every component is the envelope series (the worst case
/// allowed by the hypothesis). Integer exponents give the exact envelope;
/// fractional ones fall back to the dyadic lower envelope.
inline VectorField envelope_field(const GevreyParams& P, int N) {
    Series comp = is_integer(P.s) ? gevrey_envelope(P, N) : gevrey_envelope_dyadic(P, N);
    return VectorField(P.n, std::vector<Series>(static_cast<std::size_t>(P.m), comp));
}

// ---------------------------------------------------------------------------
// Iterated-power bound: Coef_q(X^k) <= (aA)^{k-1} (q+m-n)!^s a^q on every
// monomial, given the hypothesis Coef_q(X) <= (q+m-n)!^s a^q.
// ---------------------------------------------------------------------------

inline BoundsReport check_power_bounds(const VectorField& X, const Rational& s, const Rational& a,
                                       int K, int N, const PrecisionConfig& cfg = {}) {
    const int m = X.vars();
    const int n = X.min_order();
    if (K < 1) throw domain_error("need at least one power");
    if (X.trunc() < N) throw truncation_error("field is not exact to the requested degree");
    const mpfr_prec_t prec = bits_for(cfg);
    BoundsReport rep;
    rep.name = "power-bound";
    {
        std::ostringstream os;
        os << "m=" << m << " n=" << n << " s=" << rational_to_string(s)
           << " a=" << rational_to_string(a) << " k=1.." << K << " N=" << N;
        rep.range = os.str();
    }
    // the bound is only claimed for s >= 1/(n-1); below that regime the
    // k-th power needs the k!^r correction of the exp-gevrey check instead
    if (s * (n - 1) < 1) {
        rep.precondition_ok = false;
        std::ostringstream os;
        os << "hypothesis fails: need s >= 1/(n-1), got s=" << rational_to_string(s)
           << " with n=" << n << "; use the exp-gevrey check for small exponents";
        rep.note = os.str();
        return rep;
    }
    const GevreyParams P(s, a, m, n);
    for (int j = 0; j < m; ++j)
        if (!gevrey_dominated(truncate(X.component(j), N), P)) {
            rep.precondition_ok = false;
            std::ostringstream os;
            os << "hypothesis fails: component " << j << " is not dominated by the envelope";
            rep.note = os.str();
            return rep;
        }

    const bool exact = is_integer(s) && s > 0;
    Rational A_exact;
    Interval A_iv(prec);
    if (exact)
        A_exact = a_const_exact(m, n, s);
    else
        A_iv = a_const_enclosure(m, n, s, cfg);

    const unsigned long sp = mpz_get_ui(s.get_num().get_mpz_t());
    for (int j = 0; j < m; ++j) {
        Series pw = X.component(j);
        for (int k = 1; k <= K; ++k) {
            if (k > 1) pw = apply(X, pw);
            const int qmax = std::min(N + k - 1, pw.trunc());
            for (const auto& [q, b] : pw.buckets()) {
                if (q > qmax) break;
                Rational mx = 0;
                for (const auto& [alpha, v] : b) {
                    Rational av = abs(v);
                    if (av > mx) mx = av;
                }
                std::ostringstream os;
                os << "j=" << j << " k=" << k << " q=" << q;
                if (exact) {
                    const Rational rhs = pow_rational(a * A_exact, k - 1) *
                                         pow_int(factorial(static_cast<unsigned long>(q + m - n)), sp) *
                                         pow_rational(a, q);
                    rep.check(os.str(), mx.get_d(), rhs.get_d(), mx <= rhs);
                } else {
                    Interval rhs = mul(pow_iv(mul(Interval::from_rational(a, prec), A_iv),
                                              Rational(k - 1), prec),
                                       mul(pow_iv(Interval::from_integer(
                                                      factorial(static_cast<unsigned long>(q + m - n)),
                                                      prec),
                                                  s, prec),
                                           Interval::from_rational(pow_rational(a, q), prec)));
                    Interval lhs = Interval::from_rational(mx, prec);
                    rep.check(os.str(), lhs.hi_double(), rhs.lo_double(), certainly_le(lhs, rhs));
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Generator bound: under the smallness condition on (a, A), the generator
// of a dominated diffeomorphism satisfies the same Gevrey shape with
// radius 2a.
// ---------------------------------------------------------------------------

inline BoundsReport check_generator_bound(const Diffeo& F, const Rational& s, const Rational& a,
                                          int N, const PrecisionConfig& cfg = {}) {
    const int m = F.vars();
    const int n = F.tangency() + 1;
    if (F.trunc() < N) throw truncation_error("diffeo is not exact to the requested degree");
    const mpfr_prec_t prec = bits_for(cfg);
    BoundsReport rep;
    rep.name = "generator-bound";
    {
        std::ostringstream os;
        os << "m=" << m << " n=" << n << " s=" << rational_to_string(s)
           << " a=" << rational_to_string(a) << " q<=" << N;
        rep.range = os.str();
    }
    const GevreyParams P(s, a, m, n);
    for (int j = 0; j < m; ++j)
        if (!gevrey_dominated(truncate(F.displacement(j), N), P)) {
            rep.precondition_ok = false;
            std::ostringstream os;
            os << "hypothesis fails: displacement component " << j << " is not dominated";
            rep.note = os.str();
            return rep;
        }

    const bool exact = is_integer(s) && s > 0;
    Interval A_iv = a_const_enclosure(m, n, s, cfg);
    // smallness: sum_{k>=2} (2aA)^{k-1}/k! = (e^z - 1 - z)/z at z = 2aA
    // must not exceed 1/2; evaluated with upward rounding (the function is
    // increasing for z > 0, so the z.hi endpoint bounds it).
    Interval z = mul(Interval::from_rational(2 * a, prec), A_iv);
    Real small_up(prec);
    mpfr_exp(small_up.get(), z.hi(), MPFR_RNDU);
    mpfr_sub_ui(small_up.get(), small_up.get(), 1, MPFR_RNDU);
    mpfr_sub(small_up.get(), small_up.get(), z.lo(), MPFR_RNDU);
    mpfr_div(small_up.get(), small_up.get(), z.lo(), MPFR_RNDU);
    {
        std::ostringstream os;
        os << "smallness value <= " << small_up.to_double();
        rep.note = os.str();
    }
    if (mpfr_cmp_ui_2exp(small_up.get(), 1, -1) > 0) {   // > 1/2
        rep.precondition_ok = false;
        std::ostringstream os;
        os << "smallness condition fails (value <= " << small_up.to_double()
           << " exceeds 1/2); shrink the radius with a scaling conjugation";
        rep.note = os.str();
        return rep;
    }

    const VectorField X = log_diffeo(truncate(F, N), N);
    const Rational two_a = 2 * a;
    const unsigned long sp = mpz_get_ui(s.get_num().get_mpz_t());
    for (int j = 0; j < m; ++j) {
        for (const auto& [q, b] : X.component(j).buckets()) {
            Rational mx = 0;
            for (const auto& [alpha, v] : b) {
                Rational av = abs(v);
                if (av > mx) mx = av;
            }
            std::ostringstream os;
            os << "j=" << j << " q=" << q;
            if (exact) {
                const Rational rhs =
                    Rational(pow_int(factorial(static_cast<unsigned long>(q + m - n)), sp)) *
                    pow_rational(two_a, q);
                rep.check(os.str(), mx.get_d(), rhs.get_d(), mx <= rhs);
            } else {
                Interval rhs = mul(pow_iv(Interval::from_integer(
                                              factorial(static_cast<unsigned long>(q + m - n)), prec),
                                          s, prec),
                                   Interval::from_rational(pow_rational(two_a, q), prec));
                Interval lhs = Interval::from_rational(mx, prec);
                rep.check(os.str(), lhs.hi_double(), rhs.lo_double(), certainly_le(lhs, rhs));
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// The radius sequence a_{k+1} = sup_q ((q+m)^{1-t}/(k+1)^r)^{1/(q+k)} a_k.
// ---------------------------------------------------------------------------

struct RadiusSeqConfig {
    Rational t;             // in (0,1); plays the role of s(n-1)
    Rational r;             // in (1-t, 1)
    int m = 1;
    Rational a_start = 1;
    int K = 100;            // sequence length a_1..a_K
    long q_cap = 100000;    // hard stop for the sup scan
};

struct RadiusSeqResult {
    std::vector<double> values;   // a_1..a_K
    BoundsReport report;
};

namespace detail {

inline void validate(const RadiusSeqConfig& cfg) {
    if (!(cfg.t > 0 && cfg.t < 1)) throw domain_error("t must lie in (0,1)");
    if (!(cfg.r > 1 - cfg.t && cfg.r < 1)) throw domain_error("r must lie in (1-t, 1)");
    if (cfg.m < 1) throw domain_error("need m >= 1");
    if (cfg.a_start <= 0) throw domain_error("start radius must be positive");
    if (cfg.K < 1) throw domain_error("need at least one term");
    if (cfg.q_cap < 100) throw domain_error("scan cap too small to be meaningful");
}

/// Sequence terms a_1..a_K as intervals. Per step the sup of
/// g(q) = [(1-t) ln(q+m) - r ln(k+1)]/(q+k) is located by a forward scan;
/// g rises to a single peak and then decays like ln(q)/q, so the scan
/// stops once g has decreased 50 times in a row past the running argmax.
/// Hitting q_cap first raises an error instead of trusting a sup that was
/// still rising. Monotonicity and the per-step Bernoulli bound
/// a_{k+1} < (1 + (k+1)^{-r/(1-t)})^{1-t} a_k (for k > m) are recorded in
/// the report, as is the telescoped partial-product bound against a_m.
inline std::vector<Interval> radius_seq_intervals(const RadiusSeqConfig& cfg, int K,
                                                  const PrecisionConfig& pc, BoundsReport& rep) {
    validate(cfg);
    const mpfr_prec_t prec = bits_for(pc);
    const Rational one_t = 1 - cfg.t;
    const Rational bexp = cfg.r / one_t;   // Bernoulli exponent r/(1-t) > 1
    rep.name = "radius-sequence";
    {
        std::ostringstream os;
        os << "t=" << rational_to_string(cfg.t) << " r=" << rational_to_string(cfg.r)
           << " m=" << cfg.m << " K=" << K;
        rep.range = os.str();
    }
    std::vector<Interval> ln_cache;   // ln(q+m) for q = 1, 2, ...
    auto ln_qm = [&](long q) -> const Interval& {
        while (static_cast<long>(ln_cache.size()) < q)
            ln_cache.push_back(
                log_iv(Interval::from_long(static_cast<long>(ln_cache.size()) + 1 + cfg.m, prec)));
        return ln_cache[static_cast<std::size_t>(q - 1)];
    };
    const Interval one_t_iv = Interval::from_rational(one_t, prec);
    const Interval r_iv = Interval::from_rational(cfg.r, prec);

    std::vector<Interval> a;
    a.push_back(Interval::from_rational(cfg.a_start, prec));
    for (int k = 1; k < K; ++k) {
        const Interval lnk = log_iv(Interval::from_long(k + 1, prec));
        const Interval rlnk = mul(r_iv, lnk);
        Interval best(prec);
        bool have = false;
        long argmax = 0;
        int decreases = 0;
        double prev = std::numeric_limits<double>::infinity();
        bool found = false;
        for (long q = 1; q <= cfg.q_cap; ++q) {
            Interval g = div(sub(mul(one_t_iv, ln_qm(q)), rlnk), Interval::from_long(q + k, prec));
            const double gh = g.hi_double();
            if (!have || mpfr_cmp(g.hi(), best.hi()) > 0) argmax = q;
            best = have ? max_iv(best, g) : g;
            have = true;
            if (gh < prev && q > argmax) {
                if (++decreases >= 50) {
                    found = true;
                    break;
                }
            } else {
                decreases = 0;
            }
            prev = gh;
        }
        if (!found)
            throw inconclusive_error("sup scan reached the degree cap while still rising");
        const Interval factor = exp_iv(best);
        {
            std::ostringstream os;
            os << "monotone k=" << k;
            rep.check(os.str(), 1.0, factor.lo_double(), mpfr_cmp_ui(factor.lo(), 1) > 0);
        }
        if (k > cfg.m) {
            const Interval bern =
                pow_iv(add(Interval::from_long(1, prec),
                           pow_iv(Interval::from_long(k + 1, prec), -bexp, prec)),
                       one_t, prec);
            std::ostringstream os;
            os << "bernoulli k=" << k;
            rep.check(os.str(), factor.hi_double(), bern.lo_double(),
                      mpfr_cmp(factor.hi(), bern.lo()) < 0);
        }
        a.push_back(mul(a.back(), factor));
    }
    if (K > cfg.m) {
        // a_K <= (prod_{j=m+1}^{K} (1 + j^{-r/(1-t)}))^{1-t} a_m, the
        // telescoped form of the per-step bounds.
        Interval prod = Interval::from_long(1, prec);
        for (int j = cfg.m + 1; j <= K; ++j)
            prod = mul(prod, add(Interval::from_long(1, prec),
                                 pow_iv(Interval::from_long(j, prec), -bexp, prec)));
        const Interval bound =
            mul(pow_iv(prod, one_t, prec), a[static_cast<std::size_t>(cfg.m - 1)]);
        rep.check("partial-product", a.back().hi_double(), bound.lo_double(),
                  mpfr_cmp(a.back().hi(), bound.lo()) < 0);
    }
    return a;
}

} // namespace detail

inline RadiusSeqResult a_seq(const RadiusSeqConfig& cfg, const PrecisionConfig& pc = {}) {
    RadiusSeqResult res;
    std::vector<Interval> a = detail::radius_seq_intervals(cfg, cfg.K, pc, res.report);
    res.values.reserve(a.size());
    for (const auto& iv : a) res.values.push_back(iv.mid_double());
    return res;
}

// ---------------------------------------------------------------------------
// Exp preserves the Gevrey class for 0 < s < 1/(n-1): power bounds with the
// growing radii a_k, then domination of the flow displacement with the
// limiting radius.
// ---------------------------------------------------------------------------

inline BoundsReport check_exp_gevrey(const VectorField& X, const Rational& s, const Rational& a,
                                     const RadiusSeqConfig& cfg, int N,
                                     const PrecisionConfig& pc = {}) {
    const int m = X.vars();
    const int n = X.min_order();
    if (!(s > 0) || !(s * (n - 1) < 1))
        throw domain_error("exponent must satisfy 0 < s < 1/(n-1)");
    if (cfg.t != s * (n - 1))
        throw domain_error("config t must equal s*(n-1)");
    if (cfg.a_start != a)
        throw domain_error("config start radius must equal the hypothesis radius");
    if (X.trunc() < N) throw truncation_error("field is not exact to the requested degree");
    const mpfr_prec_t prec = bits_for(pc);
    BoundsReport rep;
    rep.name = "exp-gevrey";
    {
        std::ostringstream os;
        os << "m=" << m << " n=" << n << " s=" << rational_to_string(s)
           << " a=" << rational_to_string(a) << " r=" << rational_to_string(cfg.r) << " k=1.."
           << cfg.K << " N=" << N;
        rep.range = os.str();
    }
    const GevreyParams P(s, a, m, n);
    for (int j = 0; j < m; ++j)
        if (!gevrey_dominated(truncate(X.component(j), N), P)) {
            rep.precondition_ok = false;
            std::ostringstream os;
            os << "hypothesis fails: component " << j << " is not dominated by the envelope";
            rep.note = os.str();
            return rep;
        }

    const int jneed = N >= n ? (N - 1) / (n - 1) : 0;   // powers reaching degree N
    const int K_eff = std::max(cfg.K, std::max(jneed, cfg.m + 1));
    BoundsReport seq_rep;
    std::vector<Interval> ak = detail::radius_seq_intervals(cfg, K_eff, pc, seq_rep);
    if (!seq_rep.passed) {
        for (const auto& v : seq_rep.violations) rep.violations.push_back(v);
        rep.passed = false;
    }
    const Interval A_iv = a_const_enclosure(m, n, s, pc);

    // Power bounds: Coef_q(X^k) <= (a_k A)^{k-1} k!^r (q+m-n)!^s a_k^q.
    for (int j = 0; j < m; ++j) {
        Series pw = X.component(j);
        for (int k = 1; k <= cfg.K; ++k) {
            if (k > 1) pw = apply(X, pw);
            const Interval& akk = ak[static_cast<std::size_t>(k - 1)];
            const Interval aA_pow = pow_iv(mul(akk, A_iv), Rational(k - 1), prec);
            const Interval kfact_r =
                pow_iv(Interval::from_integer(factorial(static_cast<unsigned long>(k)), prec),
                       cfg.r, prec);
            const int qmax = std::min(N + (k - 1) * (n - 1), pw.trunc());
            for (const auto& [q, b] : pw.buckets()) {
                if (q > qmax) break;
                Rational mx = 0;
                for (const auto& [alpha, v] : b) {
                    Rational av = abs(v);
                    if (av > mx) mx = av;
                }
                Interval rhs = mul(aA_pow,
                                   mul(kfact_r,
                                       mul(pow_iv(Interval::from_integer(
                                                      factorial(static_cast<unsigned long>(q + m - n)),
                                                      prec),
                                                  s, prec),
                                           pow_iv(akk, Rational(q), prec))));
                Interval lhs = Interval::from_rational(mx, prec);
                std::ostringstream os;
                os << "power j=" << j << " k=" << k << " q=" << q;
                rep.check(os.str(), lhs.hi_double(), rhs.lo_double(), certainly_le(lhs, rhs));
            }
        }
    }

    // Flow domination with the last computed radius c = a_{K_eff}: the
    // displacement is sum_k X^k(x_j)/k!, and each contributing k <= jneed
    // has a_k <= c, so coefficients at degree q are bounded by
    // S * (q+m-n)!^s c^q with S = sum_{k=1}^{jneed} (cA)^{k-1}/k!^{1-r}.
    const Interval c = ak.back();
    const Rational one_r = 1 - cfg.r;
    Interval S(prec);
    for (int k = 1; k <= jneed; ++k) {
        Interval term = div(pow_iv(mul(c, A_iv), Rational(k - 1), prec),
                            pow_iv(Interval::from_integer(factorial(static_cast<unsigned long>(k)),
                                                          prec),
                                   one_r, prec));
        S = add(S, term);
    }
    {
        std::ostringstream os;
        os << "limit radius <= " << c.hi_double() << ", flow constant <= " << S.hi_double();
        rep.note = os.str();
    }
    const Diffeo F = exp_field(truncate(X, N), N);
    for (int j = 0; j < m; ++j) {
        for (const auto& [q, b] : F.displacement(j).buckets()) {
            Rational mx = 0;
            for (const auto& [alpha, v] : b) {
                Rational av = abs(v);
                if (av > mx) mx = av;
            }
            Interval rhs = mul(S, mul(pow_iv(Interval::from_integer(
                                                 factorial(static_cast<unsigned long>(q + m - n)),
                                                 prec),
                                             s, prec),
                                      pow_iv(c, Rational(q), prec)));
            Interval lhs = Interval::from_rational(mx, prec);
            std::ostringstream os;
            os << "flow j=" << j << " q=" << q;
            rep.check(os.str(), lhs.hi_double(), rhs.lo_double(), certainly_le(lhs, rhs));
        }
    }
    return rep;
}

} // namespace liegen
