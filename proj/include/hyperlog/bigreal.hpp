#pragma once

// Arbitrary-precision reals on top of MPFR.
//
// A BigReal carries the decimal precision P it was requested at. The MPFR
// mantissa holds P + kGuardDigits digits; binary operations produce a result
// at the smaller of the two operand precisions.

#include "hyperlog/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace hyperlog {

inline constexpr int kGuardDigits = 10;

struct Precision {
    int digits = 50;

    friend bool operator==(Precision, Precision) = default;
    friend auto operator<=>(Precision, Precision) = default;
};

inline mpfr_prec_t working_bits(Precision p) {
    return static_cast<mpfr_prec_t>(std::ceil((p.digits + kGuardDigits) * 3.3219280948873623)) + 8;
}

/// An argument outside a function's domain (log of a negative number, a pole, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class BigReal {
public:
    explicit BigReal(Precision p = {}) : digits_(p.digits) {
        mpfr_init2(v_, working_bits(p));
        mpfr_set_zero(v_, 1);
    }
    BigReal(long value, Precision p) : BigReal(p) { mpfr_set_si(v_, value, MPFR_RNDN); }
    BigReal(const Rational& value, Precision p) : BigReal(p) { mpfr_set_q(v_, value.get_mpq().get_mpq_t(), MPFR_RNDN); }
    BigReal(const mpz_class& value, Precision p) : BigReal(p) { mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN); }

    /// Decimal or scientific notation, e.g. "3.14159" or "-1.5e-20".
    BigReal(std::string_view text, Precision p) : BigReal(p) {
        std::string s(text);
        char* end = nullptr;
        if (mpfr_strtofr(v_, s.c_str(), &end, 10, MPFR_RNDN), s.empty() || *end != '\0')
            throw std::invalid_argument("not a decimal number: '" + s + "'");
    }

    BigReal(const BigReal& other) : digits_(other.digits_) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    BigReal& operator=(const BigReal& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
            digits_ = other.digits_;
        }
        return *this;
    }
    BigReal& operator=(BigReal&& other) noexcept {
        mpfr_swap(v_, other.v_);
        std::swap(digits_, other.digits_);
        return *this;
    }
    ~BigReal() { mpfr_clear(v_); }

    Precision precision() const { return {digits_}; }
    int digits() const { return digits_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Nearest integer (ties away from zero).
    mpz_class round_to_integer() const {
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDNA);
        return z;
    }

    /// log10|x| as a double; -infinity for zero.
    double log10_abs() const {
        if (is_zero())
            return -HUGE_VAL;
        long exp2 = 0;
        double mant = mpfr_get_d_2exp(&exp2, v_, MPFR_RNDN);
        return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398120;
    }

    /// Scientific notation with the given number of significant digits.
    std::string to_string(int significant = 0) const {
        if (significant <= 0)
            significant = digits_;
        if (is_zero())
            return "0";
        char* buffer = nullptr;
        mpfr_asprintf(&buffer, "%.*Re", significant - 1, v_);
        std::string out(buffer);
        mpfr_free_str(buffer);
        return out;
    }

    /// Same value rounded to another precision.
    BigReal with_precision(Precision p) const {
        BigReal out(p);
        mpfr_set(out.v_, v_, MPFR_RNDN);
        return out;
    }

    BigReal operator-() const {
        BigReal out(*this);
        mpfr_neg(out.v_, out.v_, MPFR_RNDN);
        return out;
    }

    BigReal& operator+=(const BigReal& rhs) { align(rhs); mpfr_add(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
    BigReal& operator-=(const BigReal& rhs) { align(rhs); mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
    BigReal& operator*=(const BigReal& rhs) { align(rhs); mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN); return *this; }
    BigReal& operator/=(const BigReal& rhs) {
        if (rhs.is_zero())
            throw DomainError("BigReal division by zero");
        align(rhs);
        mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
        return *this;
    }

    BigReal& operator+=(long rhs) { mpfr_add_si(v_, v_, rhs, MPFR_RNDN); return *this; }
    BigReal& operator-=(long rhs) { mpfr_sub_si(v_, v_, rhs, MPFR_RNDN); return *this; }
    BigReal& operator*=(long rhs) { mpfr_mul_si(v_, v_, rhs, MPFR_RNDN); return *this; }
    BigReal& operator/=(long rhs) {
        if (rhs == 0)
            throw DomainError("BigReal division by zero");
        mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
        return *this;
    }

    BigReal& operator+=(const Rational& rhs) { mpfr_add_q(v_, v_, rhs.get_mpq().get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator-=(const Rational& rhs) { mpfr_sub_q(v_, v_, rhs.get_mpq().get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator*=(const Rational& rhs) { mpfr_mul_q(v_, v_, rhs.get_mpq().get_mpq_t(), MPFR_RNDN); return *this; }
    BigReal& operator/=(const Rational& rhs) {
        if (rhs.is_zero())
            throw DomainError("BigReal division by zero");
        mpfr_div_q(v_, v_, rhs.get_mpq().get_mpq_t(), MPFR_RNDN);
        return *this;
    }

    template <class T>
    static constexpr bool operand_v = std::is_same_v<T, BigReal> || std::is_same_v<T, Rational> || std::is_integral_v<T>;

    template <class T> requires operand_v<T> friend BigReal operator+(BigReal lhs, const T& rhs) { return lhs += rhs; }
    template <class T> requires operand_v<T> friend BigReal operator-(BigReal lhs, const T& rhs) { return lhs -= rhs; }
    template <class T> requires operand_v<T> friend BigReal operator*(BigReal lhs, const T& rhs) { return lhs *= rhs; }
    template <class T> requires operand_v<T> friend BigReal operator/(BigReal lhs, const T& rhs) { return lhs /= rhs; }

    friend BigReal operator+(long lhs, BigReal rhs) { return rhs += lhs; }
    friend BigReal operator*(long lhs, BigReal rhs) { return rhs *= lhs; }
    friend BigReal operator-(long lhs, const BigReal& rhs) { return -rhs + lhs; }
    friend BigReal operator/(long lhs, const BigReal& rhs) {
        BigReal out(lhs, rhs.precision());
        return out /= rhs;
    }
    friend BigReal operator*(const Rational& lhs, BigReal rhs) { return rhs *= lhs; }

    friend bool operator==(const BigReal& x, const BigReal& y) { return mpfr_equal_p(x.v_, y.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigReal& x, const BigReal& y) {
        if (mpfr_unordered_p(x.v_, y.v_))
            return std::partial_ordering::unordered;
        int c = mpfr_cmp(x.v_, y.v_);
        return c < 0 ? std::partial_ordering::less
             : c > 0 ? std::partial_ordering::greater
                     : std::partial_ordering::equivalent;
    }
    friend std::partial_ordering operator<=>(const BigReal& x, long y) {
        int c = mpfr_cmp_si(x.v_, y);
        return c < 0 ? std::partial_ordering::less
             : c > 0 ? std::partial_ordering::greater
                     : std::partial_ordering::equivalent;
    }
    friend bool operator==(const BigReal& x, long y) { return mpfr_cmp_si(x.v_, y) == 0; }

private:
    // Lowers this value's precision to rhs's when rhs is coarser.
    void align(const BigReal& rhs) {
        if (rhs.digits_ < digits_) {
            mpfr_prec_round(v_, mpfr_get_prec(rhs.v_), MPFR_RNDN);
            digits_ = rhs.digits_;
        }
    }

    mpfr_t v_;
    int digits_;
};

/// 10^exponent at precision p.
inline BigReal pow10(long exponent, Precision p) {
    BigReal out(10, p);
    mpfr_pow_si(out.get(), out.get(), exponent, MPFR_RNDN);
    return out;
}

namespace detail {

template <class Fn>
BigReal apply(const BigReal& x, Fn fn) {
    BigReal out(x.precision());
    fn(out.get(), x.get(), MPFR_RNDN);
    return out;
}

/// Read-mostly cache of a constant per precision.
class ConstantCache {
public:
    template <class Compute>
    BigReal get(Precision p, Compute compute) {
        {
            std::shared_lock lock(mutex_);
            if (auto it = values_.find(p.digits); it != values_.end())
                return it->second;
        }
        BigReal value = compute(p);
        std::unique_lock lock(mutex_);
        return values_.try_emplace(p.digits, std::move(value)).first->second;
    }

private:
    std::shared_mutex mutex_;
    std::map<int, BigReal> values_;
};

}  // namespace detail

inline BigReal const_pi(Precision p) {
    static detail::ConstantCache cache;
    return cache.get(p, [](Precision q) {
        BigReal out(q);
        mpfr_const_pi(out.get(), MPFR_RNDN);
        return out;
    });
}

inline BigReal const_euler_gamma(Precision p) {
    static detail::ConstantCache cache;
    return cache.get(p, [](Precision q) {
        BigReal out(q);
        mpfr_const_euler(out.get(), MPFR_RNDN);
        return out;
    });
}

inline BigReal abs(const BigReal& x) { return detail::apply(x, mpfr_abs); }

inline BigReal sqrt(const BigReal& x) {
    if (x.sign() < 0)
        throw DomainError("sqrt of a negative number");
    return detail::apply(x, mpfr_sqrt);
}

inline BigReal log(const BigReal& x) {
    if (x.sign() <= 0)
        throw DomainError("log of a non-positive number");
    return detail::apply(x, mpfr_log);
}

inline BigReal log1p(const BigReal& x) {
    if (x <= -1L)
        throw DomainError("log1p argument <= -1");
    return detail::apply(x, mpfr_log1p);
}

inline BigReal exp(const BigReal& x) { return detail::apply(x, mpfr_exp); }
inline BigReal sin(const BigReal& x) { return detail::apply(x, mpfr_sin); }
inline BigReal cos(const BigReal& x) { return detail::apply(x, mpfr_cos); }
inline BigReal tan(const BigReal& x) { return detail::apply(x, mpfr_tan); }
inline BigReal sinh(const BigReal& x) { return detail::apply(x, mpfr_sinh); }
inline BigReal cosh(const BigReal& x) { return detail::apply(x, mpfr_cosh); }
inline BigReal atan(const BigReal& x) { return detail::apply(x, mpfr_atan); }

inline BigReal cot(const BigReal& x) {
    BigReal s = sin(x);
    if (s.is_zero())
        throw DomainError("cot at a multiple of pi");
    return cos(x) / s;
}

inline BigReal acos(const BigReal& x) {
    if (abs(x) > 1L)
        throw DomainError("arccos argument outside [-1, 1]");
    return detail::apply(x, mpfr_acos);
}

inline BigReal pow(const BigReal& x, const BigReal& y) {
    BigReal out(std::min(x.precision(), y.precision()));
    mpfr_pow(out.get(), x.get(), y.get(), MPFR_RNDN);
    if (!out.is_finite())
        throw DomainError("pow outside its real domain");
    return out;
}

inline BigReal pow(const BigReal& x, long n) {
    BigReal out(x.precision());
    mpfr_pow_si(out.get(), x.get(), n, MPFR_RNDN);
    return out;
}

/// x^(m/k) for x > 0, as the k-th root raised to the m-th power.
inline BigReal pow_rational(const BigReal& x, const Rational& r) {
    if (x.sign() <= 0)
        throw DomainError("pow_rational needs a positive base");
    const mpz_class den = r.denominator();
    const mpz_class num = r.numerator();
    if (!den.fits_ulong_p() || !num.fits_slong_p())
        return exp(log(x) * r);
    BigReal root(x.precision());
    mpfr_rootn_ui(root.get(), x.get(), den.get_ui(), MPFR_RNDN);
    return pow(root, num.get_si());
}

inline BigReal pow_rational(const Rational& x, const Rational& r, Precision p) {
    return pow_rational(BigReal(x, p), r);
}

/// A numeric value with a heuristic error bound and provenance.
struct EvalResult {
    BigReal value;
    BigReal error_estimate;
    std::string method;
    std::size_t work = 0;  // terms or nodes consumed
};

inline BigReal min(const BigReal& x, const BigReal& y) { return x < y ? x : y; }
inline BigReal max(const BigReal& x, const BigReal& y) { return x < y ? y : x; }

}  // namespace hyperlog
