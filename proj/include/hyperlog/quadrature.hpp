#pragma once

// Quadrature backend for 3F2(a,b,q; a+b,q+1; 1) through the single-integral
// reduction
//
//     3F2(a,b,q; a+b,q+1; 1) = q * int_0^1 t^(q-1) 2F1(a,b; a+b; t) dt.
//
// The inner 2F1 sits in the logarithmic case c = a + b, so near t = 1 it is
// evaluated by the connection formula with its ln(1-t) term. For q <= 0 the
// first K Taylor terms of 2F1 are integrated in closed form and subtracted
// from the integrand, which continues the integral analytically to q > -K.

#include "hyperlog/bigreal.hpp"
#include "hyperlog/criterion.hpp"
#include "hyperlog/series.hpp"
#include "hyperlog/special.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace hyperlog {

struct QuadratureOptions {
    int max_level = 12;
};

struct QuadratureResult {
    BigReal value;
    BigReal error_estimate;
    std::size_t nodes = 0;
    int levels = 0;
};

/// Non-convergence of the level refinement.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Tanh-sinh quadrature of f over [0,1]. f(t, u) receives the node t and its
/// complement u = 1 - t, each computed without cancellation so endpoint
/// singularities at either end can be evaluated accurately.
template <class F>
QuadratureResult tanh_sinh_unit(F&& f, Precision p, const QuadratureOptions& options = {}) {
    const BigReal pi = const_pi(p);
    const BigReal eps = pow10(-(p.digits + kGuardDigits), p);
    const BigReal tol = pow10(-(p.digits + kGuardDigits / 2), p);
    const BigReal half(Rational(1, 2), p);
    std::size_t nodes = 0;

    // Weighted integrand at abscissa x (both signs handled by the caller).
    auto sample = [&](const BigReal& x) {
        ++nodes;
        const BigReal e = exp(-(pi * sinh(abs(x))));
        const BigReal small = e / (1L + e);
        const BigReal weight = pi * cosh(x) * e / ((1L + e) * (1L + e));
        if (x.sign() > 0)
            return weight * f(1L - small, small);
        return weight * f(small, 1L - small);
    };

    // Level 0 (h = 1) also fixes how far out each side must go.
    const double hard_limit = 12.0;
    BigReal sum = pi / 4L * f(half, half);
    ++nodes;
    double limit[2] = {0.0, 0.0};
    for (int side = 0; side < 2; ++side) {
        for (long k = 1;; ++k) {
            const BigReal term = sample(BigReal(side == 0 ? -k : k, p));
            sum += term;
            limit[side] = static_cast<double>(k);
            if ((k > 2 && abs(term) <= eps * abs(sum)) || static_cast<double>(k) >= hard_limit)
                break;
        }
    }
    BigReal estimate = sum;

    BigReal h(1L, p);
    for (int level = 1; level <= options.max_level; ++level) {
        h /= 2L;
        BigReal fresh(p);
        for (int side = 0; side < 2; ++side) {
            for (long k = 1;; k += 2) {
                const BigReal x = h * k;
                if (x.to_double() > limit[side])
                    break;
                fresh += sample(side == 0 ? -x : x);
            }
        }
        sum += fresh;
        BigReal next = h * sum;
        BigReal change = abs(next - estimate);
        estimate = std::move(next);
        if (level >= 3 && change <= tol * abs(estimate))
            return {estimate, change + eps * abs(estimate), nodes, level};
    }
    throw QuadratureError("tanh-sinh refinement did not converge by level " + std::to_string(options.max_level));
}

/// 2F1(a, b; a+b; t) on [0,1): direct series for t <= 1/2, logarithmic
/// connection formula in 1-t above that:
///
///   F = G(a+b)/(G(a)G(b)) sum_n (a)_n (b)_n/(n!)^2
///         [2 psi(n+1) - psi(a+n) - psi(b+n) - ln(1-t)] (1-t)^n.
class Gauss2F1LogCase {
public:
    Gauss2F1LogCase(const Rational& a, const Rational& b, Precision p) : p_(p) {
        if (detail::is_nonpositive_integer(a + b))
            throw DomainError("2F1 with c = a + b a non-positive integer");
        polynomial_ = detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b);
        // t, 1-t <= 1/2: ~log2(10) terms per digit.
        const auto count = static_cast<std::size_t>(std::ceil((p.digits + kGuardDigits + 5) * 3.33)) + 16;
        const Rational c = a + b;
        Rational t(1);
        for (std::size_t n = 0; n < count; ++n) {
            direct_.emplace_back(t, p);
            if (t.is_zero())
                break;
            const Rational k(static_cast<long>(n));
            t *= (a + k) * (b + k) / ((c + k) * (k + Rational(1)));
        }
        if (polynomial_)
            return;

        prefactor_ = gamma_rational(c, p) / (gamma_rational(a, p) * gamma_rational(b, p));
        BigReal psi_a = digamma_rational(a, p);
        BigReal psi_b = digamma_rational(b, p);
        BigReal psi_one = -const_euler_gamma(p);
        Rational g(1);
        for (std::size_t n = 0; n < count; ++n) {
            const BigReal gn(g, p);
            connection_.push_back(gn);
            connection_log_.push_back(gn * (2L * psi_one - psi_a - psi_b));
            const Rational k(static_cast<long>(n));
            psi_one += Rational(1) / (k + Rational(1));
            psi_a += Rational(1) / (a + k);
            psi_b += Rational(1) / (b + k);
            g *= (a + k) * (b + k) / ((k + Rational(1)) * (k + Rational(1)));
        }
    }

    /// n-th Taylor coefficient at t = 0.
    BigReal coefficient(std::size_t n) const {
        return n < direct_.size() ? direct_[n] : BigReal(p_);
    }

    BigReal value(const BigReal& t, const BigReal& u) const { return value_minus_taylor(t, u, 0); }

    /// F(t) - sum_{n<skip} f_n t^n.
    BigReal value_minus_taylor(const BigReal& t, const BigReal& u, std::size_t skip) const {
        if (polynomial_ || t <= BigReal(Rational(1, 2), p_))
            return direct_sum(t, skip);
        BigReal s_log(p_), s_plain(p_);
        BigReal power(1L, p_);
        const BigReal eps = pow10(-(p_.digits + kGuardDigits + 2), p_);
        for (std::size_t n = 0; n < connection_.size(); ++n) {
            const BigReal plain = connection_[n] * power;
            s_log += connection_log_[n] * power;
            s_plain += plain;
            if (n > 4 && abs(plain) <= eps * abs(s_plain))
                break;
            power *= u;
        }
        BigReal out = prefactor_ * (s_log - log(u) * s_plain);
        if (skip > 0) {
            BigReal power_t(1L, p_);
            for (std::size_t n = 0; n < skip; ++n) {
                out -= coefficient(n) * power_t;
                power_t *= t;
            }
        }
        return out;
    }

private:
    BigReal direct_sum(const BigReal& t, std::size_t skip) const {
        BigReal sum(p_);
        BigReal power = pow(t, static_cast<long>(skip));
        const BigReal eps = pow10(-(p_.digits + kGuardDigits + 2), p_);
        for (std::size_t n = skip; n < direct_.size(); ++n) {
            const BigReal term = direct_[n] * power;
            sum += term;
            if (n > skip + 4 && abs(term) <= eps * abs(sum))
                break;
            power *= t;
        }
        return sum;
    }

    Precision p_;
    bool polynomial_ = false;
    BigReal prefactor_;
    std::vector<BigReal> direct_;
    std::vector<BigReal> connection_;      // (a)_n (b)_n / (n!)^2
    std::vector<BigReal> connection_log_;  // same times 2psi(n+1) - psi(a+n) - psi(b+n)
};

/// q * int_0^1 t^(q-1) F(t) dt for F given through coefficient(n) and
/// value_minus_taylor(t, u, K); analytically continued to q > -K.
template <class Function>
EvalResult moment_integral(const Rational& q, const Function& f, Precision p, const QuadratureOptions& options = {}) {
    if (q.is_zero() || (q.sign() < 0 && q.is_integer()))
        throw DomainError("moment integral undefined for q = " + q.to_string());
    const std::size_t skip =
        q.sign() > 0 ? 0 : static_cast<std::size_t>((-q).floor().get_ui()) + 1;

    const BigReal exponent(q - Rational(1), p);
    const BigReal half(Rational(1, 2), p);
    auto integrand = [&](const BigReal& t, const BigReal& u) {
        if (t.is_zero())
            return BigReal(p);
        const BigReal log_t = t <= half ? log(t) : log1p(-u);
        return exp(exponent * log_t) * f.value_minus_taylor(t, u, skip);
    };
    QuadratureResult quad = tanh_sinh_unit(integrand, p, options);

    BigReal value = quad.value * q;
    for (std::size_t n = 0; n < skip; ++n)
        value += f.coefficient(n) * (q / (q + Rational(static_cast<long>(n))));
    BigReal error = abs(quad.error_estimate * q);
    return {std::move(value), std::move(error), "quadrature", quad.nodes};
}

/// 3F2(a,b,q; a+b,q+1; 1) by tanh-sinh quadrature of the 2F1 moment.
inline EvalResult eval_3f2_quadrature(const Rational& a, const Rational& b, const Rational& q, Precision p,
                                      const QuadratureOptions& options = {}) {
    const ParameterTriple triple(a, b, q);  // validates
    const Gauss2F1LogCase inner(triple.a(), triple.b(), p);
    return moment_integral(triple.q(), inner, p, options);
}

}  // namespace hyperlog
