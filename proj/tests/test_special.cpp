#include "hyperlog/special.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace hyperlog;

namespace {

const Precision P{50};

// |x - y| relative to max(1, |y|), as log10.
double agreement(const BigReal& x, const BigReal& y) {
    const BigReal scale = max(BigReal(1L, y.precision()), abs(y));
    const BigReal d = abs(x - y) / scale;
    return d.is_zero() ? -1e9 : d.log10_abs();
}

}  // namespace

TEST(BigReal, DecimalRoundTripAndPrecision) {
    const BigReal x("3.14159265358979323846264338327950288419716939937510582097494", P);
    EXPECT_LT(agreement(x, const_pi(P)), -55);
    EXPECT_EQ((x + BigReal(1L, Precision{30})).digits(), 30);
    EXPECT_EQ(BigReal(Rational(1, 3), P).to_string(5), "3.3333e-01");
    EXPECT_EQ(BigReal(Rational(-5, 2), P).round_to_integer(), -3);
}

TEST(BigReal, DomainErrors) {
    EXPECT_THROW(log(BigReal(-1L, P)), DomainError);
    EXPECT_THROW(sqrt(BigReal(-1L, P)), DomainError);
    EXPECT_THROW(BigReal(1L, P) / BigReal(0L, P), DomainError);
}

TEST(BigReal, PowRationalMatchesRoots) {
    EXPECT_LT(agreement(pow_rational(Rational(12), Rational(3, 4), P), pow(BigReal(12L, P), BigReal(Rational(3, 4), P))),
              -55);
    EXPECT_LT(agreement(pow_rational(Rational(2), Rational(1, 2), P), sqrt(BigReal(2L, P))), -55);
    EXPECT_LT(agreement(pow_rational(Rational(1, 8), Rational(-2, 3), P), BigReal(4L, P)), -55);
}

TEST(Bernoulli, KnownValues) {
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(2), Rational(1, 6));
    EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
    EXPECT_EQ(bernoulli(13), Rational(0));
    EXPECT_EQ(bernoulli(30), Rational(mpz_class("8615841276005"), mpz_class(14322)));
}

TEST(Gamma, HalfAndIntegers) {
    EXPECT_LT(agreement(gamma_rational(Rational(1, 2), P), sqrt(const_pi(P))), -(P.digits - 5));
    EXPECT_LT(agreement(gamma_rational(Rational(6), P), BigReal(120L, P)), -(P.digits - 5));
    EXPECT_LT(agreement(gamma_rational(Rational(-1, 2), P), -2L * sqrt(const_pi(P))), -(P.digits - 5));
    EXPECT_THROW(gamma_rational(Rational(-3), P), DomainError);
}

TEST(Gamma, ReflectionAndRecurrence) {
    for (const auto& f : oracle::proper_fractions(13)) {
        const Rational x(f.num, f.den);
        const BigReal lhs = gamma_rational(x, P) * gamma_rational(Rational(1) - x, P);
        const BigReal rhs = const_pi(P) / sin(const_pi(P) * BigReal(x, P));
        EXPECT_LT(agreement(lhs, rhs), -(P.digits - 5)) << x;
        for (const Rational& y : {x, x + Rational(7), x - Rational(3)})
            EXPECT_LT(agreement(gamma_rational(y + Rational(1), P), BigReal(y, P) * gamma_rational(y, P)),
                      -(P.digits - 5))
                << y;
    }
}

TEST(Beta, SymmetricAndKnown) {
    EXPECT_LT(agreement(beta_rational(Rational(1, 6), Rational(5, 6), P), 2L * const_pi(P)), -(P.digits - 5));
    EXPECT_LT(agreement(beta_rational(Rational(2, 7), Rational(3, 5), P), beta_rational(Rational(3, 5), Rational(2, 7), P)),
              -(P.digits - 5));
    EXPECT_THROW(beta_rational(Rational(-1), Rational(1, 2), P), DomainError);
}

TEST(Digamma, SpecialValues) {
    const BigReal gamma = const_euler_gamma(P);
    EXPECT_LT(agreement(digamma_rational(Rational(1), P), -gamma), -(P.digits - 5));
    EXPECT_LT(agreement(digamma_rational(Rational(1, 2), P), -gamma - 2L * log(BigReal(2L, P))), -(P.digits - 5));
    EXPECT_THROW(digamma_rational(Rational(0), P), DomainError);
}

TEST(Digamma, GaussFormulaAgreesWithAsymptoticOracle) {
    mpfr_t ref;
    mpfr_init2(ref, working_bits(P));
    for (const auto& f : oracle::proper_fractions(24)) {
        oracle::digamma(ref, f.num, f.den, working_bits(P));
        const BigReal expected = [&] {
            BigReal r(P);
            mpfr_set(r.get(), ref, MPFR_RNDN);
            return r;
        }();
        EXPECT_LT(agreement(digamma_gauss(Rational(f.num, f.den), P), expected), -(P.digits - 5)) << oracle::str(f);
    }
    mpfr_clear(ref);
}

TEST(Digamma, Recurrence) {
    for (const auto& f : oracle::proper_fractions(10)) {
        for (long shift : {-4L, 0L, 5L}) {
            const Rational x = Rational(f.num, f.den) + Rational(shift);
            EXPECT_LT(agreement(digamma_rational(x + Rational(1), P), digamma_rational(x, P) + BigReal(Rational(1) / x, P)),
                      -(P.digits - 5))
                << x;
        }
    }
}

TEST(HurwitzZeta, KnownValuesAndRecurrence) {
    const BigReal two(2L, P), one(1L, P);
    const BigReal pi = const_pi(P);
    EXPECT_LT(agreement(hurwitz_zeta(two, one, P), pi * pi / 6L), -(P.digits - 5));
    EXPECT_LT(agreement(hurwitz_zeta(BigReal(4L, P), one, P), pow(pi, 4) / 90L), -(P.digits - 5));
    // zeta(2, 1/2) = 3 zeta(2)
    EXPECT_LT(agreement(hurwitz_zeta(two, BigReal(Rational(1, 2), P), P), pi * pi / 2L), -(P.digits - 5));
    for (const Rational& s : {Rational(3, 2), Rational(7, 3), Rational(5)}) {
        for (const Rational& a : {Rational(1, 7), Rational(5, 2), Rational(40)}) {
            const BigReal ss(s, P), aa(a, P);
            const BigReal lhs = hurwitz_zeta(ss, aa, P) - hurwitz_zeta(ss, aa + 1L, P);
            EXPECT_LT(agreement(lhs, pow(aa, -ss)), -(P.digits - 5)) << s << " " << a;
        }
    }
    EXPECT_THROW(hurwitz_zeta(one, one, P), DomainError);
    EXPECT_THROW(hurwitz_zeta(two, BigReal(0L, P), P), DomainError);
}
