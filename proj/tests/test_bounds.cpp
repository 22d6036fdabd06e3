#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <cstdlib>

#include "liegen/bounds.hpp"
#include "liegen/exp_log.hpp"

using namespace liegen;

namespace {

MultiIndex mi(std::vector<std::uint32_t> e) { return MultiIndex(std::move(e)); }

// Independent evaluation of the envelope tail sum through the closed form
// (1/(m-1)!) y^{-n} d^{m-1}/dy^{m-1} [ y^{m+n-1}/(1-y) ], carried out by
// symbolic differentiation of P(y)/(1-y)^k.
Rational theta_via_derivative(const Rational& y, int m, int n) {
    std::vector<Rational> P(static_cast<std::size_t>(m + n), 0);
    P[static_cast<std::size_t>(m + n - 1)] = 1;
    long k = 1;
    for (int d = 0; d < m - 1; ++d) {
        std::vector<Rational> next(P.size() + 1, 0);
        for (std::size_t i = 0; i + 1 < P.size(); ++i) {
            const Rational dp = Rational(static_cast<long>(i + 1)) * P[i + 1];
            next[i] += dp;          // P'(y)
            next[i + 1] -= dp;      // -y P'(y)
        }
        for (std::size_t i = 0; i < P.size(); ++i) next[i] += Rational(k) * P[i];
        P = std::move(next);
        ++k;
    }
    Rational num = 0, yp = 1;
    for (std::size_t i = 0; i < P.size(); ++i) {
        num += P[i] * yp;
        yp *= y;
    }
    return num / pow_rational(1 - y, k) /
           Rational(factorial(static_cast<unsigned long>(m - 1))) / pow_rational(y, n);
}

double note_value(const std::string& note) {
    const auto pos = note.find("<= ");
    REQUIRE(pos != std::string::npos);
    return std::atof(note.c_str() + pos + 3);
}

Series factorial_envelope(int N, const Rational& a) {
    // f_q = (q-1)! a^q x^q, the one-dimensional order-2 exact envelope
    Series f(1, N);
    for (int q = 2; q <= N; ++q)
        f.set_coeff(mi({static_cast<std::uint32_t>(q)}),
                    Rational(factorial(static_cast<unsigned long>(q - 1))) * pow_rational(a, q));
    return f;
}

} // namespace

TEST_CASE("envelope tail sum: closed form at known points") {
    CHECK(theta_exact(Rational(1, 2), 1, 2) == 2);
    for (int n = 2; n <= 5; ++n) CHECK(theta_exact(Rational(1, 2), 1, n) == 2);
    CHECK(theta_exact(Rational(1, 4), 1, 2) == Rational(4, 3));
    CHECK(theta_exact(Rational(1, 2), 2, 2) == 8);
    CHECK(theta_exact(Rational(2, 3), 2, 2) == 15);
    CHECK(theta_exact(Rational(3, 4), 2, 2) == 24);
    CHECK_THROWS_AS(theta_exact(Rational(1), 1, 2), domain_error);
    CHECK_THROWS_AS(theta_exact(Rational(0), 1, 2), domain_error);
    CHECK_THROWS_AS(theta_exact(Rational(-1, 2), 1, 2), domain_error);
}

TEST_CASE("envelope tail sum: closed form equals the derivative formula") {
    const Rational ys[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    for (int m = 1; m <= 4; ++m)
        for (int n = 2; n <= 5; ++n)
            for (const Rational& y : ys)
                CHECK(theta_exact(y, m, n) == theta_via_derivative(y, m, n));
}

TEST_CASE("envelope tail sum: summation encloses the closed form tightly") {
    const PrecisionConfig pc{50, 1e-40};
    const mpfr_prec_t prec = bits_for(pc);
    const Rational ys[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    for (int m = 1; m <= 4; ++m)
        for (int n = 2; n <= 5; ++n)
            for (const Rational& y : ys) {
                const Interval iv = theta_sum(Interval::from_rational(y, prec), m, n, pc);
                const Rational exact = theta_exact(y, m, n);
                const Interval ex = Interval::from_rational(exact, prec);
                CHECK(mpfr_cmp(iv.lo(), ex.hi()) <= 0);
                CHECK(mpfr_cmp(iv.hi(), ex.lo()) >= 0);
                Real width(prec);
                mpfr_sub(width.get(), iv.hi(), iv.lo(), MPFR_RNDU);
                CHECK(mpfr_cmp_d(width.get(), 10 * pc.tail_tolerance) < 0);
            }
    CHECK_THROWS_AS(theta_sum(Interval::from_long(1, prec), 1, 2, pc), domain_error);
}

TEST_CASE("sup ratio constant") {
    CHECK(c_mn(1, 2) == Rational(1, 2));
    CHECK(c_mn(3, 2) == Rational(3, 4));
    CHECK(c_mn(2, 5) == Rational(1, 2));
    for (int m = 1; m <= 5; ++m)
        for (int n = 2; n <= 5; ++n) CHECK(c_mn(m, n) < 1);
}

TEST_CASE("coefficient sum: exact values and the admissibility threshold") {
    CHECK(b_q_exact(1, 2, 1, 5) == Rational(3, 2));
    CHECK(b_q_exact(1, 2, 1, 3) == 1);
    CHECK(b_q_exact(1, 3, 1, 5) == Rational(3, 2));
    CHECK_THROWS_AS(b_q_exact(1, 2, 1, 2), domain_error);
    CHECK_THROWS_AS(b_q_exact(1, 3, 1, 4), domain_error);
    CHECK_THROWS_AS(b_q_exact(1, 2, Rational(1, 2), 5), domain_error);
}

TEST_CASE("coefficient sum: directed-rounding enclosure brackets the exact value") {
    const PrecisionConfig pc{50, 1e-40};
    const mpfr_prec_t prec = bits_for(pc);
    const long qs[] = {3, 5, 10, 47, 200};
    for (int m = 1; m <= 3; ++m)
        for (int n = 2; n <= 3; ++n)
            for (long s = 1; s <= 2; ++s)
                for (long q : qs) {
                    if (q < 2 * n - 1) continue;
                    const Interval iv = b_q_enclosure(m, n, s, q, pc);
                    const Interval ex = Interval::from_rational(b_q_exact(m, n, s, q), prec);
                    CHECK(mpfr_cmp(iv.lo(), ex.hi()) <= 0);
                    CHECK(mpfr_cmp(iv.hi(), ex.lo()) >= 0);
                }
}

TEST_CASE("coefficient sum: fractional exponent spot value") {
    const PrecisionConfig pc{50, 1e-40};
    const Interval iv = b_q_enclosure(1, 2, Rational(1, 2), 5, pc);
    const double expect = 1.0 + 1.0 / std::sqrt(2.0);   // 1^s + (1/2)^s
    CHECK(iv.lo_double() <= expect);
    CHECK(iv.hi_double() >= expect);
    CHECK(std::abs(iv.mid_double() - expect) < 1e-12);
}

TEST_CASE("coefficient sums stay under the uniform bound") {
    const PrecisionConfig pc{30, 1e-25};
    BoundsReport rep = check_bq_bounded(1, 2, 1, 50, pc);
    CHECK(rep.ok());
    CHECK(rep.margins.checks == 48);
    CHECK(rep.note.find("bound >= 2") != std::string::npos);
    Rational worst = 0;
    for (long q = 3; q <= 50; ++q) {
        const Rational v = b_q_exact(1, 2, 1, q);
        if (v > worst) worst = v;
    }
    CHECK(worst < 2);

    CHECK(check_bq_bounded(2, 3, Rational(1, 2), 100, pc).ok());

    BoundsReport one = check_bq_bounded(1, 2, 1, 3, pc);
    CHECK(one.ok());
    CHECK(one.margins.checks == 1);
}

TEST_CASE("iterated-power constant") {
    CHECK(a_const_exact(1, 2, 1) == 4);
    CHECK(a_const_exact(1, 2, 2) == Rational(8, 3));
    CHECK(a_const_exact(2, 2, 1) == 60);
    CHECK_THROWS_AS(a_const_exact(1, 2, Rational(1, 2)), domain_error);

    const PrecisionConfig pc{50, 1e-40};
    const Interval i1 = a_const_enclosure(1, 2, 1, pc);
    CHECK(i1.lo_double() <= 4.0);
    CHECK(i1.hi_double() >= 4.0);
    const Interval ih = a_const_enclosure(1, 2, Rational(1, 2), pc);
    const double expect = 2.0 * (2.0 + std::sqrt(2.0));   // 2 Theta(sqrt(1/2)) for m=1
    CHECK(std::abs(ih.mid_double() - expect) < 1e-12);
}

TEST_CASE("power bounds on the quadratic field: closed-form witness") {
    const PrecisionConfig pc{30, 1e-25};
    Series x = Series::variable(1, 10, 0);
    VectorField X(2, {mul(x, x)});
    BoundsReport rep = check_power_bounds(X, 1, 1, 5, 10, pc);
    CHECK(rep.ok());
    // k=1, q=2 is the hypothesis itself: margin exactly zero there
    CHECK(rep.margins.min_margin == 0.0);
    CHECK(rep.margins.min_at == "j=0 k=1 q=2");
    // closed form: coefficient of X^k(x) is k! at degree k+1, bound 4^{k-1} k!
    for (int k = 1; k <= 5; ++k) {
        const Rational lhs = Rational(factorial(static_cast<unsigned long>(k)));
        const Rational rhs = pow_rational(4, k - 1) *
                             Rational(factorial(static_cast<unsigned long>(k)));
        CHECK(lhs <= rhs);
    }
}

TEST_CASE("power bounds on the exact worst-case envelope") {
    const PrecisionConfig pc{30, 1e-25};
    VectorField X = envelope_field(GevreyParams(1, Rational(1, 4), 2, 2), 8);
    BoundsReport rep = check_power_bounds(X, 1, Rational(1, 4), 4, 8, pc);
    CHECK(rep.ok());

    // k=1 rows restate the hypothesis, so a K=1 run is the domination test
    BoundsReport k1 = check_power_bounds(X, 1, Rational(1, 4), 1, 8, pc);
    CHECK(k1.ok());
}

TEST_CASE("power bounds with a fractional exponent") {
    // s = 1/2, n = 3 sits exactly on the regime boundary s = 1/(n-1)
    const PrecisionConfig pc{30, 1e-25};
    VectorField X = envelope_field(GevreyParams(Rational(1, 2), 1, 1, 3), 8);
    BoundsReport rep = check_power_bounds(X, Rational(1, 2), 1, 3, 8, pc);
    CHECK(rep.ok());
}

TEST_CASE("power bounds reject exponents below the regime") {
    const PrecisionConfig pc{30, 1e-25};
    VectorField X = envelope_field(GevreyParams(Rational(1, 2), 1, 1, 2), 8);
    BoundsReport rep = check_power_bounds(X, Rational(1, 2), 1, 3, 8, pc);
    CHECK(!rep.precondition_ok);
    CHECK(rep.note.find("s >= 1/(n-1)") != std::string::npos);
    CHECK(rep.violations.empty());
}

TEST_CASE("power bounds report a failed hypothesis as a precondition") {
    const PrecisionConfig pc{30, 1e-25};
    Series f(1, 8);
    f.set_coeff(mi({2}), 2);   // 2 > 0! * 1^2
    BoundsReport rep = check_power_bounds(VectorField(2, {f}), 1, 1, 3, 8, pc);
    CHECK(!rep.precondition_ok);
    CHECK(!rep.note.empty());
    CHECK(rep.violations.empty());
}

TEST_CASE("generator bound under the smallness condition") {
    const PrecisionConfig pc{30, 1e-25};
    const Rational a(1, 16);
    Diffeo F(1, {factorial_envelope(12, a)});
    BoundsReport rep = check_generator_bound(F, 1, a, 12, pc);
    CHECK(rep.ok());
    // (e^{1/2} - 3/2)/(1/2) = 2 e^{1/2} - 3
    CHECK(std::abs(note_value(rep.note) - (2.0 * std::exp(0.5) - 3.0)) < 1e-6);

    // generator coefficients sit under (q-1)! (2a)^q = (q-1)! (1/8)^q
    VectorField X = log_diffeo(F, 12);
    for (const auto& [q, b] : X.component(0).buckets())
        for (const auto& [alpha, v] : b)
            CHECK(abs(v) <= Rational(factorial(static_cast<unsigned long>(q - 1))) *
                                pow_rational(Rational(1, 8), q));

    // roundtripping the diffeo through its generator reproduces the report
    Diffeo F2 = exp_field(X, 12);
    CHECK(F2 == F);
    BoundsReport rep2 = check_generator_bound(F2, 1, a, 12, pc);
    CHECK(rep2.ok());
    CHECK(rep2.margins.checks == rep.margins.checks);
}

TEST_CASE("generator bound rejects a radius violating smallness") {
    const PrecisionConfig pc{30, 1e-25};
    Diffeo F(1, {factorial_envelope(8, 1)});
    BoundsReport rep = check_generator_bound(F, 1, 1, 8, pc);   // 2aA = 8
    CHECK(!rep.precondition_ok);
    CHECK(rep.note.find("scaling conjugation") != std::string::npos);
}

TEST_CASE("generator bound checks the hypothesis first") {
    const PrecisionConfig pc{30, 1e-25};
    Series f(1, 8);
    f.set_coeff(mi({2}), 1);   // 1 > 0! (1/16)^2
    BoundsReport rep = check_generator_bound(Diffeo(1, {f}), 1, Rational(1, 16), 8, pc);
    CHECK(!rep.precondition_ok);
}

TEST_CASE("radius sequence: growth, Bernoulli and product bounds") {
    const PrecisionConfig pc{30, 1e-25};
    RadiusSeqConfig cfg;
    cfg.t = Rational(1, 2);
    cfg.r = Rational(3, 4);
    cfg.m = 1;
    cfg.a_start = 1;
    cfg.K = 30;
    RadiusSeqResult res = a_seq(cfg, pc);
    CHECK(res.report.ok());
    REQUIRE(res.values.size() == 30);
    CHECK(res.values.front() == 1.0);
    for (std::size_t i = 0; i + 1 < res.values.size(); ++i)
        CHECK(res.values[i + 1] > res.values[i]);
    // K-1 growth checks, K-1-m Bernoulli checks, one product bound
    CHECK(res.report.margins.checks == 29 + 28 + 1);
}

TEST_CASE("radius sequence: config validation") {
    RadiusSeqConfig cfg;
    cfg.t = Rational(1, 2);
    cfg.r = Rational(3, 4);
    cfg.K = 5;
    RadiusSeqConfig bad = cfg;
    bad.t = 1;
    CHECK_THROWS_AS(a_seq(bad), domain_error);
    bad = cfg;
    bad.r = Rational(1, 4);   // below 1-t
    CHECK_THROWS_AS(a_seq(bad), domain_error);
    bad = cfg;
    bad.a_start = 0;
    CHECK_THROWS_AS(a_seq(bad), domain_error);
    bad = cfg;
    bad.q_cap = 50;
    CHECK_THROWS_AS(a_seq(bad), domain_error);
}

TEST_CASE("radius sequence: a cap mid-rise is reported, not trusted") {
    const PrecisionConfig pc{30, 1e-25};
    RadiusSeqConfig cfg;
    cfg.t = Rational(9, 10);
    cfg.r = Rational(1, 2);
    cfg.m = 1;
    cfg.a_start = 1;
    cfg.K = 2;
    cfg.q_cap = 100;   // sup near q=86; the decrease streak cannot finish
    CHECK_THROWS_AS(a_seq(cfg, pc), inconclusive_error);
}

TEST_CASE("flow stays Gevrey below the critical exponent") {
    const PrecisionConfig pc{30, 1e-25};
    VectorField X = envelope_field(GevreyParams(Rational(1, 4), 1, 1, 3), 10);
    RadiusSeqConfig cfg;
    cfg.t = Rational(1, 2);    // s (n-1)
    cfg.r = Rational(3, 4);
    cfg.m = 1;
    cfg.a_start = 1;
    cfg.K = 4;
    BoundsReport rep = check_exp_gevrey(X, Rational(1, 4), 1, cfg, 10, pc);
    CHECK(rep.ok());
    CHECK(rep.note.find("limit radius") != std::string::npos);
}

TEST_CASE("flow Gevrey check rejects exponents at or above the threshold") {
    const PrecisionConfig pc{30, 1e-25};
    VectorField X = envelope_field(GevreyParams(Rational(1, 2), 1, 1, 3), 8);
    RadiusSeqConfig cfg;
    cfg.t = 1;
    cfg.r = Rational(3, 4);
    CHECK_THROWS_AS(check_exp_gevrey(X, Rational(1, 2), 1, cfg, 8, pc), domain_error);

    // t must match s(n-1), start radius must match the hypothesis radius
    VectorField Y = envelope_field(GevreyParams(Rational(1, 4), 1, 1, 3), 8);
    RadiusSeqConfig mis;
    mis.t = Rational(1, 3);
    mis.r = Rational(3, 4);
    CHECK_THROWS_AS(check_exp_gevrey(Y, Rational(1, 4), 1, mis, 8, pc), domain_error);
    RadiusSeqConfig mis2;
    mis2.t = Rational(1, 2);
    mis2.r = Rational(3, 4);
    mis2.a_start = 2;
    CHECK_THROWS_AS(check_exp_gevrey(Y, Rational(1, 4), 1, mis2, 8, pc), domain_error);
}

TEST_CASE("flow Gevrey check reports a failed hypothesis as a precondition") {
    const PrecisionConfig pc{30, 1e-25};
    Series f(1, 8);
    f.set_coeff(mi({3}), 100);   // above 1!^{1/4} at radius 1
    RadiusSeqConfig cfg;
    cfg.t = Rational(1, 2);
    cfg.r = Rational(3, 4);
    BoundsReport rep = check_exp_gevrey(VectorField(3, {f}), Rational(1, 4), 1, cfg, 8, pc);
    CHECK(!rep.precondition_ok);
}
