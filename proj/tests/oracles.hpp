// Reference implementations used only by tests. They share no code path with
// the library beyond MPFR itself.
#pragma once

#include <mpfr.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

// Small exact fraction on int64; enough for denominators in the hundreds.
struct Frac {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Frac() = default;
    Frac(std::int64_t n, std::int64_t d = 1) : num(n), den(d) {
        if (den == 0)
            throw std::domain_error("zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    friend Frac operator+(Frac x, Frac y) { return {x.num * y.den + y.num * x.den, x.den * y.den}; }
    friend Frac operator-(Frac x, Frac y) { return {x.num * y.den - y.num * x.den, x.den * y.den}; }
    friend Frac operator*(std::int64_t k, Frac x) { return {k * x.num, x.den}; }
    friend bool operator==(Frac x, Frac y) { return x.num == y.num && x.den == y.den; }
    bool integral() const { return den == 1; }
};

inline Frac fractional_part(Frac x) {
    std::int64_t r = x.num % x.den;
    if (r < 0)
        r += x.den;
    return {r, x.den};
}

inline std::int64_t totient(std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t k = 1; k <= n; ++k)
        count += std::gcd(k, n) == 1;
    return n == 1 ? 1 : count;
}

inline bool valid(Frac a, Frac b, Frac q) {
    return !a.integral() && !b.integral() && !q.integral() && !(q - a).integral() && !(q - b).integral() &&
           !(q - a - b).integral();
}

inline std::int64_t modulus(Frac a, Frac b, Frac q) { return std::lcm(std::lcm(a.den, b.den), q.den); }

// For every unit s mod N: {sq} + {s(a-q)} + {s(b-q)} + {s(q-a-b)} - 1.
inline std::map<std::int64_t, std::int64_t> hodge_profile(Frac a, Frac b, Frac q) {
    const std::int64_t n = modulus(a, b, q);
    std::map<std::int64_t, std::int64_t> out;
    for (std::int64_t s = 1; s < std::max<std::int64_t>(n, 2); ++s) {
        if (std::gcd(s, n) != 1)
            continue;
        const Frac total = fractional_part(s * q) + fractional_part(s * (a - q)) + fractional_part(s * (b - q)) +
                           fractional_part(s * (q - a - b));
        if (!total.integral())
            throw std::logic_error("non-integral Hodge sum");
        out[s] = total.num - 1;
    }
    return out;
}

inline bool log_type(Frac a, Frac b, Frac q) {
    for (const auto& [s, p] : hodge_profile(a, b, q))
        if (p != 1)
            return false;
    return true;
}

// psi(x) for x > 0 in raw MPFR: shift up by recurrence, then the asymptotic
// series with tabulated Bernoulli numbers B_2 .. B_40.
inline void digamma(mpfr_t out, std::int64_t num, std::int64_t den, mpfr_prec_t bits) {
    static const char* const bernoulli[][2] = {
        {"1", "6"},          {"-1", "30"},           {"1", "42"},           {"-1", "30"},
        {"5", "66"},         {"-691", "2730"},       {"7", "6"},            {"-3617", "510"},
        {"43867", "798"},    {"-174611", "330"},     {"854513", "138"},     {"-236364091", "2730"},
        {"8553103", "6"},    {"-23749461029", "870"}, {"8615841276005", "14322"}, {"-7709321041217", "510"},
        {"2577687858367", "6"}, {"-26315271553053477373", "1919190"}, {"2929993913841559", "6"},
        {"-261082718496449122051", "13530"},
    };
    mpfr_t x, acc, t, x2, pw;
    mpfr_inits2(bits, x, acc, t, x2, pw, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(x, num, MPFR_RNDN);
    mpfr_div_si(x, x, den, MPFR_RNDN);
    mpfr_set_zero(acc, 1);
    const double target = static_cast<double>(bits) * 0.30103 * 1.2 + 10;
    while (mpfr_get_d(x, MPFR_RNDN) < target) {
        mpfr_si_div(t, 1, x, MPFR_RNDN);
        mpfr_sub(acc, acc, t, MPFR_RNDN);
        mpfr_add_ui(x, x, 1, MPFR_RNDN);
    }
    mpfr_log(t, x, MPFR_RNDN);
    mpfr_add(acc, acc, t, MPFR_RNDN);
    mpfr_si_div(t, 1, x, MPFR_RNDN);
    mpfr_div_2ui(t, t, 1, MPFR_RNDN);
    mpfr_sub(acc, acc, t, MPFR_RNDN);
    mpfr_sqr(x2, x, MPFR_RNDN);
    mpfr_set(pw, x2, MPFR_RNDN);
    for (int k = 1; k <= 20; ++k) {
        mpfr_set_str(t, bernoulli[k - 1][0], 10, MPFR_RNDN);
        mpfr_div_d(t, t, std::stod(bernoulli[k - 1][1]), MPFR_RNDN);
        mpfr_div_si(t, t, 2 * k, MPFR_RNDN);
        mpfr_div(t, t, pw, MPFR_RNDN);
        mpfr_sub(acc, acc, t, MPFR_RNDN);
        mpfr_mul(pw, pw, x2, MPFR_RNDN);
    }
    mpfr_set(out, acc, MPFR_RNDN);
    mpfr_clears(x, acc, t, x2, pw, static_cast<mpfr_ptr>(nullptr));
}

// All fractions n/d in (0,1) with d <= max_den, deduplicated.
inline std::vector<Frac> proper_fractions(std::int64_t max_den) {
    std::vector<Frac> out;
    for (std::int64_t d = 2; d <= max_den; ++d)
        for (std::int64_t n = 1; n < d; ++n)
            if (std::gcd(n, d) == 1)
                out.emplace_back(n, d);
    return out;
}

inline std::string str(Frac x) {
    return x.den == 1 ? std::to_string(x.num) : std::to_string(x.num) + "/" + std::to_string(x.den);
}

}  // namespace oracle
