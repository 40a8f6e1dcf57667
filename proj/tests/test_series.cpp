#include "hyperlog/series.hpp"
#include "hyperlog/special.hpp"

#include <gtest/gtest.h>

using namespace hyperlog;

namespace {

const Precision P{50};

double rel_log10(const BigReal& x, const BigReal& y) {
    const BigReal d = abs(x - y) / max(BigReal(1L, y.precision()), abs(y));
    return d.is_zero() ? -1e9 : d.log10_abs();
}

Rational r(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST(Series, RatioRecurrenceMatchesPochhammerProducts) {
    const UpperParams up{r(1, 6), r(5, 6), r(-1, 12)};
    const LowerParams lo{r(1), r(11, 12)};
    const auto terms = hypergeometric_terms(up, lo, 40);
    for (std::size_t n = 0; n < terms.size(); ++n)
        EXPECT_EQ(terms[n], hypergeometric_term(up, lo, n)) << n;
    EXPECT_EQ(pochhammer(r(1, 2), 3), r(15, 8));
    EXPECT_EQ(pochhammer(r(-2), 3), r(0));
}

TEST(Series, ParametricExcess) {
    EXPECT_EQ(parametric_excess({r(1, 6), r(5, 6), r(1, 4)}, {r(1), r(5, 4)}), r(1));
    EXPECT_EQ(parametric_excess({r(1), r(1), r(1, 2)}, {r(4, 3), r(3, 2)}), r(1, 3));
}

TEST(Series, ZeroUpperParameterGivesOne) {
    const auto v = eval_3f2_series({r(0), r(1, 3), r(2, 5)}, {r(1, 2), r(7, 3)}, P);
    EXPECT_TRUE((v.value - 1L).is_zero());
}

TEST(Series, TerminatingSumIsExact) {
    // 3F2(-3, 1/2, 1/3; 2, 5/4; 1) summed by hand over four terms.
    const UpperParams up{r(-3), r(1, 2), r(1, 3)};
    const LowerParams lo{r(2), r(5, 4)};
    Rational sum(0);
    for (std::size_t n = 0; n < 4; ++n)
        sum += hypergeometric_term(up, lo, n);
    EXPECT_TRUE((eval_3f2_series(up, lo, P).value - BigReal(sum, P)).is_zero());
}

TEST(Series, ReducesToGaussSummation) {
    // A cancelling pair c, c reduces 3F2 to 2F1(a,b;d;1) = G(d)G(d-a-b)/(G(d-a)G(d-b)).
    const Rational a = r(1, 3), b = r(1, 4), c = r(1, 5), d = r(2);
    const auto v = eval_3f2_series({a, b, c}, {d, c}, P);
    const BigReal expected = gamma_rational(d, P) * gamma_rational(d - a - b, P) /
                             (gamma_rational(d - a, P) * gamma_rational(d - b, P));
    EXPECT_LT(rel_log10(v.value, expected), -(P.digits - 2));
    EXPECT_LE(abs(v.value - expected), v.error_estimate + pow10(-(P.digits + 5), P));
}

TEST(Series, ZetaTwo) {
    // 3F2(1,1,1;2,2;1) = zeta(2)
    const auto v = eval_3f2_series({r(1), r(1), r(1)}, {r(2), r(2)}, P);
    const BigReal pi = const_pi(P);
    const BigReal err = abs(v.value - pi * pi / 6L);
    EXPECT_LT(err.log10_abs(), -(P.digits - 2));
    EXPECT_LE(err, v.error_estimate);
}

TEST(Series, SmallExcess) {
    // 3F2(1,1,1;2,2+1/10;1): slowly converging tail, checked against precision doubling.
    const UpperParams up{r(1), r(1), r(9, 10)};
    const LowerParams lo{r(2), r(11, 10)};
    const auto lo_p = eval_3f2_series(up, lo, P);
    const auto hi_p = eval_3f2_series(up, lo, Precision{100});
    EXPECT_LT(rel_log10(lo_p.value, hi_p.value), -(P.digits - 2));
}

TEST(Series, LeadingTailCoefficientIsGammaRatio) {
    const UpperParams up{r(1, 6), r(5, 6), r(1, 4)};
    const LowerParams lo{r(1), r(5, 4)};
    const auto plan = series_tail_plan(up, lo, P);
    EXPECT_EQ(plan.exponent, r(2));
    ASSERT_FALSE(plan.tail_coefficients.empty());
    const BigReal k = gamma_rational(lo[0], P) * gamma_rational(lo[1], P) /
                      (gamma_rational(up[0], P) * gamma_rational(up[1], P) * gamma_rational(up[2], P));
    EXPECT_LT(rel_log10(plan.tail_coefficients[0], k), -40);
}

TEST(Series, DomainChecks) {
    EXPECT_THROW(eval_3f2_series({r(1), r(1), r(1)}, {r(2), r(1)}, P), DomainError);
    EXPECT_THROW(eval_3f2_series({r(1, 2), r(1, 3), r(1, 4)}, {r(-2), r(5, 2)}, P), DomainError);
}

TEST(Series, TailModelCapSurfaces) {
    SeriesOptions tight;
    tight.head_terms = 8;
    tight.max_tail_order = 1;
    EXPECT_THROW(eval_3f2_series({r(1, 6), r(5, 6), r(1, 4)}, {r(1), r(5, 4)}, P, tight), TailModelError);
}

TEST(Series, VanishingTailCoefficientDoesNotStopTheModel) {
    // For these parameters d_3 = 0 exactly while d_4 does not vanish.
    const UpperParams up{r(1, 3), r(1, 2), r(1, 6)};
    const LowerParams lo{r(5, 6), r(7, 6)};
    const auto plan = series_tail_plan(up, lo, P);
    EXPECT_GT(plan.tail_order, 3u);
    const auto x = eval_3f2_series(up, lo, P), y = eval_3f2_series(up, lo, Precision{100});
    EXPECT_LT(rel_log10(x.value, y.value), -(P.digits - 2));
}

TEST(Series, PrecisionDoublingAgrees) {
    for (long i = 1; i < 7; ++i)
        for (long j = i; j < 7; ++j)
            for (long k = 1; k < 7; ++k) {
                const UpperParams up{r(i, 7), r(j, 6), r(k, 5)};
                const LowerParams lo{up[0] + up[1], up[2] + r(1)};
                const auto x = eval_3f2_series(up, lo, P), y = eval_3f2_series(up, lo, Precision{80});
                EXPECT_LT(rel_log10(x.value, y.value), -(P.digits - 2)) << i << " " << j << " " << k;
            }
}
