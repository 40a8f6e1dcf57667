#pragma once

// Gamma, beta and digamma at rational arguments, and the Hurwitz zeta
// function, all at arbitrary precision.

#include "hyperlog/bigreal.hpp"
#include "hyperlog/rational.hpp"

#include <cstddef>
#include <mutex>
#include <vector>

namespace hyperlog {

/// Exact Bernoulli number B_n (B_1 = -1/2). Memoized.
inline Rational bernoulli(std::size_t n) {
    static std::mutex mutex;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard lock(mutex);
    while (table.size() <= n) {
        // B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
        const std::size_t m = table.size();
        if (m > 1 && m % 2 == 1) {
            table.emplace_back(0);
            continue;
        }
        Rational sum(0);
        mpz_class binom = 1;  // C(m+1, k)
        for (std::size_t k = 0; k < m; ++k) {
            if (!table[k].is_zero())
                sum += Rational(binom) * table[k];
            binom = binom * static_cast<unsigned long>(m + 1 - k) / static_cast<unsigned long>(k + 1);
        }
        table.push_back(-sum / Rational(static_cast<long>(m + 1)));
    }
    return table[n];
}

namespace detail {

inline bool is_nonpositive_integer(const Rational& r) { return r.is_integer() && r.sign() <= 0; }

inline BigReal epsilon(Precision p) { return pow10(-(p.digits + kGuardDigits), p); }

/// Stirling series for ln Gamma(z), z large and positive.
inline BigReal log_gamma_stirling(const BigReal& z) {
    const Precision p = z.precision();
    BigReal out = (z - Rational(1, 2)) * log(z) - z + log(2 * const_pi(p)) / 2L;
    const BigReal z2 = z * z;
    BigReal zpow = z;  // z^(2k-1)
    const BigReal eps = epsilon(p);
    for (std::size_t k = 1;; ++k) {
        BigReal term = BigReal(bernoulli(2 * k), p) / (static_cast<long>(2 * k * (2 * k - 1))) / zpow;
        out += term;
        if (abs(term) < eps)
            break;
        if (k > 4 * static_cast<std::size_t>(p.digits + kGuardDigits))
            throw std::runtime_error("Stirling series failed to converge");
        zpow *= z2;
    }
    return out;
}

/// Shift that moves a rational argument into the Stirling region.
inline long stirling_shift(const Rational& r, Precision p) {
    const double target = 0.45 * (p.digits + kGuardDigits) + 10.0;
    const double x = r.to_double();
    return x >= target ? 0L : static_cast<long>(std::ceil(target - x));
}

}  // namespace detail

/// Gamma(r) for rational r that is not a non-positive integer.
inline BigReal gamma_rational(const Rational& r, Precision p) {
    if (detail::is_nonpositive_integer(r))
        throw DomainError("gamma pole at " + r.to_string());
    const long m = detail::stirling_shift(r, p);
    // Gamma(r) = Gamma(r+m) / (r (r+1) ... (r+m-1)), product exact.
    Rational product(1);
    for (long i = 0; i < m; ++i)
        product *= r + Rational(i);
    BigReal shifted(r + Rational(m), p);
    return exp(detail::log_gamma_stirling(shifted)) / product;
}

inline BigReal beta_rational(const Rational& a, const Rational& b, Precision p) {
    if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b) ||
        detail::is_nonpositive_integer(a + b))
        throw DomainError("beta pole at (" + a.to_string() + ", " + b.to_string() + ")");
    return gamma_rational(a, p) * gamma_rational(b, p) / gamma_rational(a + b, p);
}

/// psi(p/k) for 0 < p/k <= 1 by Gauss's digamma theorem:
///   psi(p/k) = -gamma - ln(2k) - (pi/2) cot(pi p/k)
///              + 2 sum_{n=1}^{floor((k-1)/2)} cos(2 pi n p/k) ln sin(pi n/k)
inline BigReal digamma_gauss(const Rational& fraction, Precision p) {
    const BigReal gamma = const_euler_gamma(p);
    if (fraction == Rational(1))
        return -gamma;
    if (fraction.sign() <= 0 || fraction > Rational(1))
        throw std::invalid_argument("digamma_gauss needs 0 < p/k <= 1");
    const mpz_class num = fraction.numerator();
    const mpz_class den = fraction.denominator();
    if (!den.fits_slong_p())
        throw CapacityError("digamma denominator too large");
    const long k = den.get_si();
    const BigReal pi = const_pi(p);
    BigReal out = -gamma - log(BigReal(2 * k, p)) - pi / 2L * cot(pi * fraction);
    BigReal sum(p);
    for (long n = 1; n <= (k - 1) / 2; ++n) {
        // cos(2 pi n p/k) with the angle reduced mod 2 pi
        const Rational half_turns = Rational(2 * n) * fraction;
        const Rational reduced = Rational(2) * frac(half_turns / Rational(2));
        sum += cos(pi * reduced) * log(sin(pi * Rational(n, k)));
    }
    return out + 2L * sum;
}

/// psi(r) for rational r that is not a non-positive integer.
inline BigReal digamma_rational(const Rational& r, Precision p) {
    if (detail::is_nonpositive_integer(r))
        throw DomainError("digamma pole at " + r.to_string());
    // r = f + n with f in (0,1]; psi(f+n) = psi(f) + sum_{i<n} 1/(f+i).
    Rational f = frac(r);
    if (f.is_zero())
        f = Rational(1);
    const Rational shift = r - f;
    if (!shift.numerator().fits_slong_p())
        throw CapacityError("digamma argument too large");
    const long n = shift.numerator().get_si();
    Rational correction(0);
    for (long i = 0; i < n; ++i)
        correction += Rational(1) / (f + Rational(i));
    for (long i = 1; i <= -n; ++i)
        correction -= Rational(1) / (f - Rational(i));
    return digamma_gauss(f, p) + correction;
}

/// Hurwitz zeta(s, a) = sum_{n>=0} (n+a)^(-s) for s > 1, a > 0.
/// Direct head sum followed by an Euler-Maclaurin tail.
inline BigReal hurwitz_zeta(const BigReal& s, const BigReal& a, Precision p) {
    if (s <= 1L)
        throw DomainError("hurwitz_zeta diverges for s <= 1");
    if (a <= 0L)
        throw DomainError("hurwitz_zeta needs a > 0");
    const BigReal sigma = s.with_precision(p);
    const BigReal base = a.with_precision(p);
    const BigReal eps = detail::epsilon(p);
    const double total_digits = p.digits + kGuardDigits;

    for (double reach = 0.5 * total_digits + 0.25 * sigma.to_double() + 5.0;; reach *= 2) {
        const long head = std::max(0L, static_cast<long>(std::ceil(reach - base.to_double())));
        BigReal sum(p);
        for (long k = 0; k < head; ++k)
            sum += pow(base + k, -sigma);
        const BigReal x = base + head;
        const BigReal x_pow = pow(x, 1L - sigma);  // x^(1-s)
        const BigReal inv_x2 = 1L / (x * x);
        sum += x_pow / (sigma - 1L);
        BigReal x_term = x_pow / x;  // x^(-s)
        sum += x_term / 2L;
        // B_2j/(2j)! * s(s+1)...(s+2j-2) * x^(-s-2j+1)
        BigReal rising = sigma;
        x_term = x_pow * inv_x2;  // x^(-s-1)
        BigReal factorial(2L, p);
        BigReal previous(p);
        bool converged = false;
        for (std::size_t j = 1; j < 4 * static_cast<std::size_t>(total_digits) + 200; ++j) {
            BigReal term = BigReal(bernoulli(2 * j), p) / factorial * rising * x_term;
            if (j > 2 && abs(term) > abs(previous))
                break;  // asymptotic series turned; need a larger shift
            sum += term;
            if (abs(term) <= eps * abs(sum)) {
                converged = true;
                break;
            }
            previous = term;
            rising *= (sigma + static_cast<long>(2 * j - 1)) * (sigma + static_cast<long>(2 * j));
            factorial *= static_cast<long>((2 * j + 1) * (2 * j + 2));
            x_term *= inv_x2;
        }
        if (converged)
            return sum;
        if (reach > 1e6)
            throw std::runtime_error("hurwitz_zeta: Euler-Maclaurin tail did not converge");
    }
}

}  // namespace hyperlog
