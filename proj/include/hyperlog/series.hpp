#pragma once

// 3F2 at unit argument by direct summation of a head plus an asymptotic
// tail.
//
// For n >= M the term t_n of sum (a1)_n (a2)_n (a3)_n / ((b1)_n (b2)_n n!)
// is modelled as
//
//     t_n = K n^{-s} (1 + d_1/n + d_2/n^2 + ...),   s = 1 + e,
//
// where e = b1 + b2 - a1 - a2 - a3 is the parametric excess. The d_j follow
// order by order from the exact term ratio; K is fitted to t_M, and the tail
// is K sum_j d_j zeta(s + j, M + 1).

#include "hyperlog/bigreal.hpp"
#include "hyperlog/rational.hpp"
#include "hyperlog/special.hpp"

#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlog {

using UpperParams = std::array<Rational, 3>;
using LowerParams = std::array<Rational, 2>;

/// The tail model could not reach the requested accuracy.
class TailModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SeriesOptions {
    std::size_t head_terms = 0;      // 0 selects max(64, 4P)
    std::size_t max_tail_order = 0;  // 0 selects ceil(4P / log10 M)
};

struct SeriesPlan {
    std::size_t head_terms = 0;  // M: terms 0..M are summed directly
    std::size_t tail_order = 0;  // J
    Rational exponent;           // s = 1 + e
    std::vector<BigReal> tail_coefficients;  // c_j = K d_j, j = 0..J
};

inline Rational pochhammer(const Rational& x, std::size_t n) {
    Rational out(1);
    for (std::size_t i = 0; i < n; ++i)
        out *= x + Rational(static_cast<long>(i));
    return out;
}

/// t_n from Pochhammer products.
inline Rational hypergeometric_term(const UpperParams& upper, const LowerParams& lower, std::size_t n) {
    Rational num = pochhammer(upper[0], n) * pochhammer(upper[1], n) * pochhammer(upper[2], n);
    Rational den = pochhammer(lower[0], n) * pochhammer(lower[1], n) * pochhammer(Rational(1), n);
    return num / den;
}

/// t_0..t_{count-1} through the exact ratio t_{n+1}/t_n.
inline std::vector<Rational> hypergeometric_terms(const UpperParams& upper, const LowerParams& lower,
                                                  std::size_t count) {
    std::vector<Rational> terms;
    terms.reserve(count);
    Rational t(1);
    for (std::size_t n = 0; n < count; ++n) {
        terms.push_back(t);
        const Rational k(static_cast<long>(n));
        t *= (k + upper[0]) * (k + upper[1]) * (k + upper[2]) /
             ((k + lower[0]) * (k + lower[1]) * (k + Rational(1)));
    }
    return terms;
}

inline Rational parametric_excess(const UpperParams& upper, const LowerParams& lower) {
    return lower[0] + lower[1] - upper[0] - upper[1] - upper[2];
}

namespace detail {

/// Elementary symmetric polynomials e_0..e_3 of three rationals.
inline std::array<Rational, 4> elementary_symmetric(const Rational& x, const Rational& y, const Rational& z) {
    return {Rational(1), x + y + z, x * y + x * z + y * z, x * y * z};
}

struct SeriesEvaluation {
    EvalResult result;
    SeriesPlan plan;
};

inline SeriesEvaluation evaluate_3f2_series(const UpperParams& upper, const LowerParams& lower, Precision p,
                                            const SeriesOptions& options) {
    for (const auto& b : lower)
        if (is_nonpositive_integer(b))
            throw DomainError("3F2 lower parameter " + b.to_string() + " is a non-positive integer");

    // Terminating series: sum exactly.
    for (const auto& a : upper)
        if (is_nonpositive_integer(a)) {
            const auto count = static_cast<std::size_t>(-a.numerator().get_si()) + 1;
            Rational sum(0);
            for (const auto& t : hypergeometric_terms(upper, lower, count))
                sum += t;
            SeriesPlan plan{count, 0, Rational(0), {}};
            return {{BigReal(sum, p), BigReal(p), "series", count}, plan};
        }

    const Rational excess = parametric_excess(upper, lower);
    if (excess.sign() <= 0)
        throw DomainError("3F2 diverges at z = 1: parametric excess " + excess.to_string() + " <= 0");
    const Rational s = Rational(1) + excess;

    const std::size_t m = options.head_terms ? options.head_terms
                                             : std::max<std::size_t>(64, 4 * static_cast<std::size_t>(p.digits));
    const double log10_m = std::log10(static_cast<double>(m));
    const std::size_t max_order = options.max_tail_order
                                      ? options.max_tail_order
                                      : static_cast<std::size_t>(std::ceil(4.0 * p.digits / log10_m));

    // Head: t_0..t_M.
    const auto terms = hypergeometric_terms(upper, lower, m + 1);
    BigReal head(p);
    for (const auto& t : terms)
        head += BigReal(t, p);
    const BigReal t_m(terms.back(), p);

    // Formal solution of t_{n+1} D(n) = t_n U(n) in powers of x = 1/n, with
    // U(x) = prod (1 + a_i x) and D(x) = (1 + x) prod (1 + b_i x).
    const auto uc = elementary_symmetric(upper[0], upper[1], upper[2]);
    const auto dc = elementary_symmetric(Rational(1), lower[0], lower[1]);
    std::vector<BigReal> d{BigReal(1L, p)};
    std::vector<std::vector<BigReal>> binom;  // binom[j][k] = C(-s-j, k)
    auto binomial = [&](std::size_t j, std::size_t k) -> const BigReal& {
        if (binom.size() <= j)
            binom.resize(j + 1);
        auto& row = binom[j];
        if (row.empty())
            row.emplace_back(1L, p);
        while (row.size() <= k) {
            const std::size_t i = row.size() - 1;
            const Rational factor = (-s - Rational(static_cast<long>(j + i))) / Rational(static_cast<long>(i + 1));
            row.push_back(row.back() * factor);
        }
        return row[k];
    };
    auto next_coefficient = [&] {
        const std::size_t order = d.size();  // computing d_order from x^(order+1)
        BigReal acc(p);
        for (std::size_t j = 0; j < order; ++j) {
            const std::size_t r = order + 1 - j;
            BigReal w(p);
            for (std::size_t i = 0; i <= 3 && i <= r; ++i)
                if (!dc[i].is_zero())
                    w += binomial(j, r - i) * dc[i];
            if (r <= 3)
                w -= uc[r];
            acc += d[j] * w;
        }
        d.push_back(acc / static_cast<long>(order));
    };

    const BigReal big_m(static_cast<long>(m), p);
    const BigReal m_pow_s = pow(big_m, BigReal(s, p));  // M^s
    // Tail magnitude ~ t_M M / (s - 1); target relative truncation error.
    const BigReal tail_scale = abs(t_m) * big_m / BigReal(excess, p);
    const BigReal target = pow10(-(p.digits + kGuardDigits), p) * (head.is_zero() ? BigReal(1L, p) : abs(head));

    // Stop at J once both d_{J+1} and d_{J+2} are negligible: a single
    // coefficient can vanish by accident.
    std::size_t order = 0;
    BigReal inv_m_pow(1L, p);  // M^-(order+1)
    next_coefficient();
    BigReal dropped(p);        // largest neglected |d_j| M^-j
    for (;;) {
        next_coefficient();  // d_{order+2}
        inv_m_pow /= big_m;
        dropped = max(abs(d[order + 1]) * inv_m_pow, abs(d[order + 2]) * inv_m_pow / big_m);
        if (2L * tail_scale * dropped <= target)
            break;
        if (++order > max_order)
            throw TailModelError("3F2 tail model did not converge by order " + std::to_string(max_order) +
                                 " with M = " + std::to_string(m) + "; raise the head length");
    }

    // Fit K at n = M, then sum the tail from M+1.
    BigReal model(p);
    BigReal m_pow = m_pow_s;
    for (std::size_t j = 0; j <= order; ++j) {
        model += d[j] / m_pow;
        m_pow *= big_m;
    }
    const BigReal k = t_m / model;

    SeriesPlan plan{m, order, s, {}};
    BigReal tail(p);
    const BigReal start(static_cast<long>(m + 1), p);
    for (std::size_t j = 0; j <= order; ++j) {
        const BigReal c = k * d[j];
        tail += c * hurwitz_zeta(BigReal(s + Rational(static_cast<long>(j)), p), start, p);
        plan.tail_coefficients.push_back(c);
    }

    BigReal value = head + tail;
    const BigReal truncation = 2L * abs(tail) * dropped;
    const BigReal rounding = pow10(-(p.digits + kGuardDigits), p) * static_cast<long>(m + order) * abs(value);
    return {{std::move(value), truncation + rounding, "series", m + 1 + order}, std::move(plan)};
}

}  // namespace detail

/// 3F2(upper; lower; 1) by head summation and asymptotic tail.
inline EvalResult eval_3f2_series(const UpperParams& upper, const LowerParams& lower, Precision p,
                                  const SeriesOptions& options = {}) {
    return detail::evaluate_3f2_series(upper, lower, p, options).result;
}

/// Tail model used by eval_3f2_series with the same options.
inline SeriesPlan series_tail_plan(const UpperParams& upper, const LowerParams& lower, Precision p,
                                   const SeriesOptions& options = {}) {
    return detail::evaluate_3f2_series(upper, lower, p, options).plan;
}

}  // namespace hyperlog
