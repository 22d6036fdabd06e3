#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "liegen/errors.hpp"

namespace liegen {

/// Exact rational coefficient type. Values are kept canonical (lowest
/// terms, positive denominator); every constructor helper below
/// canonicalizes, and GMP arithmetic preserves the form.
using Rational = mpq_class;

/// Parses "num", "-num" or "num/den" in base 10. Throws domain_error on
/// malformed input or a zero denominator.
inline Rational rational_from_string(const std::string& text) {
    Rational q;
    if (text.empty() || mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw domain_error("malformed rational literal '" + text + "'");
    if (q.get_den() == 0)
        throw domain_error("zero denominator in rational literal '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

/// num/den in canonical form. The raw two-argument mpq constructor keeps
/// common factors, which silently breaks exact equality later; quotients
/// built from computed values must go through here.
inline Rational make_rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class pow_int(const mpz_class& x, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

/// x^e for integer e (negative e inverts; throws domain_error on 0^-e).
inline Rational pow_rational(const Rational& x, long e) {
    if (e < 0 && x == 0)
        throw domain_error("zero raised to a negative power");
    const unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), a);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), a);
    if (e < 0) {
        r = 1 / r;
    }
    return r;
}

inline bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

/// Natural log of |x| for nonzero x, safe against double overflow in
/// numerator or denominator.
inline double log_abs(const Rational& q) {
    static const double ln2 = std::log(2.0);
    signed long en = 0, ed = 0;
    const double dn = mpz_get_d_2exp(&en, q.get_num().get_mpz_t());
    const double dd = mpz_get_d_2exp(&ed, q.get_den().get_mpz_t());
    return (std::log(std::fabs(dn)) + static_cast<double>(en) * ln2) -
           (std::log(dd) + static_cast<double>(ed) * ln2);
}

} // namespace liegen
