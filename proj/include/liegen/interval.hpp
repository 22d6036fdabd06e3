#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>

#include "liegen/errors.hpp"
#include "liegen/rational.hpp"

namespace liegen {

/// RAII wrapper for a single mpfr number at a fixed precision.
class Real {
public:
    explicit Real(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

/// Closed interval [lo, hi] with outward-rounded endpoints: every operation
/// returns an interval guaranteed to contain the exact result. Comparisons
/// are certain only when the intervals do not overlap — the style used here
/// for inequality verification ("pass" requires lhs.hi <= rhs.lo, so a pass
/// can never be an artifact of rounding).
class Interval {
public:
    explicit Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

    static Interval from_rational(const Rational& q, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }
    static Interval from_long(long v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }
    static Interval from_integer(const mpz_class& v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
        return r;
    }

    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }
    mpfr_ptr lo() { return lo_.get(); }
    mpfr_ptr hi() { return hi_.get(); }
    mpfr_prec_t prec() const { return lo_.prec(); }
    double lo_double() const { return lo_.to_double(); }
    double hi_double() const { return hi_.to_double(); }
    double mid_double() const { return 0.5 * (lo_double() + hi_double()); }

    bool contains_zero() const {
        return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
    }
    bool positive() const { return mpfr_sgn(lo_.get()) > 0; }

private:
    Real lo_, hi_;
};

inline bool certainly_le(const Interval& a, const Interval& b) {
    return mpfr_cmp(a.hi(), b.lo()) <= 0;
}
inline bool certainly_lt(const Interval& a, const Interval& b) {
    return mpfr_cmp(a.hi(), b.lo()) < 0;
}

inline Interval add(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

inline Interval sub(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
}

inline Interval neg(const Interval& a) {
    Interval r(a.prec());
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    return r;
}

namespace detail {

/// r = round over the four endpoint products, keeping min into lo and max
/// into hi; sign-agnostic and safe, if a little wasteful.
inline void corner_mul(Interval& r, const Interval& a, const Interval& b) {
    Real t(r.prec());
    mpfr_srcptr xs[2] = {a.lo(), a.hi()};
    mpfr_srcptr ys[2] = {b.lo(), b.hi()};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_mul(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo()) < 0) mpfr_set(r.lo(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi()) > 0) mpfr_set(r.hi(), t.get(), MPFR_RNDU);
            first = false;
        }
}

} // namespace detail

inline Interval mul(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    detail::corner_mul(r, a, b);
    return r;
}

inline Interval div(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw domain_error("interval division by an interval containing zero");
    Interval r(std::max(a.prec(), b.prec()));
    Real t(r.prec());
    mpfr_srcptr xs[2] = {a.lo(), a.hi()};
    mpfr_srcptr ys[2] = {b.lo(), b.hi()};
    bool first = true;
    for (auto x : xs)
        for (auto y : ys) {
            mpfr_div(t.get(), x, y, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo()) < 0) mpfr_set(r.lo(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), x, y, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi()) > 0) mpfr_set(r.hi(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r;
}

/// exp over [lo, hi]; monotone, so endpoints map directly.
inline Interval exp_iv(const Interval& a) {
    Interval r(a.prec());
    mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

/// natural log over a strictly positive interval.
inline Interval log_iv(const Interval& a) {
    if (!a.positive()) throw domain_error("interval log needs a positive interval");
    Interval r(a.prec());
    mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
    return r;
}

/// x^e for positive x and rational e, via exp(e·log x).
inline Interval pow_iv(const Interval& x, const Rational& e, mpfr_prec_t prec) {
    if (!x.positive()) throw domain_error("interval power needs a positive base");
    if (e == 0) return Interval::from_long(1, prec);
    Interval lx = log_iv(x);
    Interval el = mul(Interval::from_rational(e, prec), lx);
    return exp_iv(el);
}

/// Pointwise maximum (valid enclosure of max of the two exact values).
inline Interval max_iv(const Interval& a, const Interval& b) {
    Interval r(std::max(a.prec(), b.prec()));
    mpfr_max(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

/// Decimal rendering (upper endpoint) for reports.
inline std::string to_string(const Interval& a, int digits = 17) {
    char buf[128];
    mpfr_snprintf(buf, sizeof buf, "%.*Rg", digits, a.hi());
    return std::string(buf);
}

} // namespace liegen
