#pragma once

// PSLQ integer relation detection (Ferguson, Bailey and Arno).
//
// Given reals x_1..x_n, finds a nonzero integer vector m with
// |sum m_i x_i| ~ 0, or proves that every relation has max|m_i| at least
// the reported exclusion bound.

#include "hyperlog/bigreal.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace hyperlog {

struct Relation {
    std::vector<std::int64_t> coefficients;
    BigReal residual;         // |sum m_i x_i| at the detection precision
    std::int64_t norm = 0;    // max |m_i|
    double confidence_digits = 0.0;
};

enum class PslqStatus {
    found,                // relation detected
    excluded,             // no relation with norm <= max_norm
    precision_exhausted,  // ran out of precision before deciding
};

struct PslqOutcome {
    PslqStatus status = PslqStatus::precision_exhausted;
    std::optional<Relation> relation;
    double exclusion_bound = 0.0;  // every relation has norm >= this
    std::size_t iterations = 0;
};

struct PslqOptions {
    int safety_digits = 15;  // detection threshold 10^-(P - safety)
    std::size_t max_iterations = 200000;
    double min_confidence_digits = 5.0;  // below this a detection is ambiguous
};

namespace detail {

/// Digits of cancellation beyond what a chance relation of the same norm and
/// length would give.
inline double confidence_digits(const BigReal& residual, double scale, std::int64_t norm, std::size_t n, int digits) {
    const double cancelled = residual.is_zero() ? static_cast<double>(digits + kGuardDigits)
                                                : std::log10(std::max(scale, 1e-300)) - residual.log10_abs();
    const double chance = static_cast<double>(n - 1) * std::log10(static_cast<double>(std::max<std::int64_t>(norm, 1)));
    return cancelled - chance;
}

inline Relation make_relation(std::vector<std::int64_t> m, std::span<const BigReal> x, Precision p) {
    // First nonzero coefficient positive.
    for (auto c : m)
        if (c != 0) {
            if (c < 0)
                for (auto& v : m)
                    v = -v;
            break;
        }
    BigReal sum(p);
    double scale = 0.0;
    std::int64_t norm = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        sum += x[i] * static_cast<long>(m[i]);
        scale = std::max(scale, std::fabs(x[i].to_double() * static_cast<double>(m[i])));
        norm = std::max<std::int64_t>(norm, m[i] < 0 ? -m[i] : m[i]);
    }
    Relation r{std::move(m), abs(sum), norm, 0.0};
    r.confidence_digits = confidence_digits(r.residual, scale, norm, r.coefficients.size(), p.digits);
    return r;
}

}  // namespace detail

inline PslqOutcome pslq(std::span<const BigReal> x, Precision p, double max_norm, const PslqOptions& options = {}) {
    const std::size_t n = x.size();
    if (n < 2)
        throw std::invalid_argument("pslq needs at least two values");
    for (const auto& v : x)
        if (!v.is_finite())
            throw DomainError("pslq input is not finite");
        else if (v.digits() < p.digits)
            throw std::invalid_argument("pslq input carries less precision than requested");

    std::vector<BigReal> xs;
    for (const auto& v : x)
        xs.push_back(v.with_precision(p));

    PslqOutcome outcome;
    for (std::size_t i = 0; i < n; ++i)
        if (xs[i].is_zero()) {
            std::vector<std::int64_t> m(n, 0);
            m[i] = 1;
            outcome.status = PslqStatus::found;
            outcome.relation = detail::make_relation(std::move(m), xs, p);
            return outcome;
        }

    const BigReal gamma = sqrt(BigReal(Rational(4, 3), p));
    const BigReal threshold = pow10(-(p.digits - options.safety_digits), p);
    // Multipliers beyond this many digits consume all working precision.
    const double integer_digits = static_cast<double>(p.digits + kGuardDigits - options.safety_digits);

    // Partial norms s_k = sqrt(sum_{j>=k} x_j^2), normalized by s_0.
    std::vector<BigReal> s(n, BigReal(p));
    {
        BigReal acc(p);
        for (std::size_t k = n; k-- > 0;) {
            acc += xs[k] * xs[k];
            s[k] = sqrt(acc);
        }
    }
    const BigReal s0 = s[0];
    std::vector<BigReal> y(n, BigReal(p));
    for (std::size_t k = 0; k < n; ++k) {
        y[k] = xs[k] / s0;
        s[k] /= s0;
    }

    using Matrix = std::vector<std::vector<BigReal>>;
    Matrix h(n, std::vector<BigReal>(n - 1, BigReal(p)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n - 1 && j <= i; ++j)
            h[i][j] = i == j ? s[j + 1] / s[j] : -(y[i] * y[j]) / (s[j] * s[j + 1]);

    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n, 0));
    auto b = a;
    for (std::size_t i = 0; i < n; ++i)
        a[i][i] = b[i][i] = 1;

    bool overflow = false;
    auto reduce = [&](std::size_t i, std::size_t j) {
        if (h[j][j].is_zero())
            return;
        const BigReal ratio = h[i][j] / h[j][j];
        if (!ratio.is_zero() && ratio.log10_abs() > integer_digits) {
            overflow = true;
            return;
        }
        const mpz_class t = ratio.round_to_integer();
        if (t == 0)
            return;
        const BigReal tr(t, p);
        y[j] += y[i] * tr;
        for (std::size_t k = 0; k <= j; ++k)
            h[i][k] -= h[j][k] * tr;
        for (std::size_t k = 0; k < n; ++k) {
            a[i][k] -= t * a[j][k];
            b[k][j] += t * b[k][i];
            if (mpz_sizeinbase(a[i][k].get_mpz_t(), 10) > integer_digits ||
                mpz_sizeinbase(b[k][j].get_mpz_t(), 10) > integer_digits)
                overflow = true;
        }
    };
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = i; j-- > 0;)
            reduce(i, j);

    auto check_relation = [&]() -> bool {
        std::size_t best = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (abs(y[j]) < abs(y[best]))
                best = j;
        if (abs(y[best]) >= threshold)
            return false;
        std::vector<std::int64_t> m(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!b[i][best].fits_slong_p()) {
                outcome.status = PslqStatus::precision_exhausted;
                return true;
            }
            m[i] = b[i][best].get_si();
        }
        outcome.relation = detail::make_relation(std::move(m), xs, p);
        outcome.status = outcome.relation->confidence_digits >= options.min_confidence_digits
                             ? PslqStatus::found
                             : PslqStatus::precision_exhausted;
        return true;
    };

    for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
        outcome.iterations = iter;

        // Exclusion bound: every relation has norm >= 1 / max |H_jj|.
        BigReal hmax(p);
        for (std::size_t j = 0; j < n - 1; ++j)
            hmax = max(hmax, abs(h[j][j]));
        if (!hmax.is_zero()) {
            const double bound = 1.0 / hmax.to_double();
            outcome.exclusion_bound = std::max(outcome.exclusion_bound, bound);
        }

        if (check_relation())
            return outcome;
        if (outcome.exclusion_bound > max_norm) {
            outcome.status = PslqStatus::excluded;
            return outcome;
        }
        if (overflow)
            break;

        // Exchange at the row maximizing gamma^i |H_ii|.
        std::size_t m = 0;
        BigReal best(p);
        BigReal weight = gamma;
        for (std::size_t i = 0; i < n - 1; ++i) {
            const BigReal v = weight * abs(h[i][i]);
            if (v > best) {
                best = v;
                m = i;
            }
            weight *= gamma;
        }
        std::swap(y[m], y[m + 1]);
        std::swap(a[m], a[m + 1]);
        std::swap(h[m], h[m + 1]);
        for (std::size_t k = 0; k < n; ++k)
            std::swap(b[k][m], b[k][m + 1]);

        if (m + 2 < n) {
            const BigReal t0 = sqrt(h[m][m] * h[m][m] + h[m][m + 1] * h[m][m + 1]);
            if (t0.is_zero())
                break;
            const BigReal t1 = h[m][m] / t0;
            const BigReal t2 = h[m][m + 1] / t0;
            for (std::size_t i = m; i < n; ++i) {
                const BigReal t3 = h[i][m];
                const BigReal t4 = h[i][m + 1];
                h[i][m] = t1 * t3 + t2 * t4;
                h[i][m + 1] = t1 * t4 - t2 * t3;
            }
        }
        for (std::size_t i = m + 1; i < n; ++i)
            for (std::size_t j = std::min(i - 1, m + 1) + 1; j-- > 0;)
                reduce(i, j);

        // A vanishing diagonal entry signals an exact relation in B.
        for (std::size_t j = 0; j < n - 1; ++j)
            if (abs(h[j][j]) < threshold) {
                if (check_relation())
                    return outcome;
            }
    }
    outcome.status = PslqStatus::precision_exhausted;
    return outcome;
}

}  // namespace hyperlog
