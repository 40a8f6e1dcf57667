#pragma once

// Exact rational arithmetic, residues mod Z and the unit groups (Z/NZ)^x.
//
// Rationals are kept in lowest terms with a positive denominator, so two
// rationals compare equal exactly when their representations do.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlog {

/// A request exceeds a configured size limit.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const mpz_class& value) : value_(value) {}

    Rational(const mpz_class& numerator, const mpz_class& denominator) {
        if (denominator == 0)
            throw std::domain_error("rational with zero denominator");
        value_ = mpq_class(numerator, denominator);
        value_.canonicalize();
    }

    Rational(long numerator, long denominator)
        : Rational(mpz_class(numerator), mpz_class(denominator)) {}

    /// Parses "p/q" or an integer. Decimal notation is rejected.
    static Rational parse(std::string_view text) {
        auto bad = [&] { return std::invalid_argument("not a fraction: '" + std::string(text) + "'"); };
        if (text.empty())
            throw bad();
        auto is_integer_text = [](std::string_view s) {
            if (!s.empty() && (s.front() == '-' || s.front() == '+'))
                s.remove_prefix(1);
            if (s.empty())
                return false;
            for (char c : s)
                if (c < '0' || c > '9')
                    return false;
            return true;
        };
        auto strip_plus = [](std::string_view s) {
            if (!s.empty() && s.front() == '+')
                s.remove_prefix(1);
            return std::string(s);
        };
        auto slash = text.find('/');
        if (slash == std::string_view::npos) {
            if (!is_integer_text(text))
                throw bad();
            return Rational(mpz_class(strip_plus(text)));
        }
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' || den.front() == '+')
            throw bad();
        const mpz_class d{std::string(den)};
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(mpz_class(strip_plus(num)), d);
    }

    mpz_class numerator() const { return value_.get_num(); }
    mpz_class denominator() const { return value_.get_den(); }
    const mpq_class& get_mpq() const { return value_; }

    bool is_integer() const { return value_.get_den() == 1; }
    bool is_zero() const { return sgn(value_) == 0; }
    int sign() const { return sgn(value_); }

    mpz_class floor() const {
        mpz_class out;
        mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
        return out;
    }

    double to_double() const { return value_.get_d(); }

    std::string to_string() const {
        if (is_integer())
            return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    Rational operator-() const { return from_mpq(-value_); }
    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs) {
        if (rhs.is_zero())
            throw std::domain_error("rational division by zero");
        value_ /= rhs.value_;
        return *this;
    }

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

    friend bool operator==(const Rational& lhs, const Rational& rhs) { return lhs.value_ == rhs.value_; }
    friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
        int c = cmp(lhs.value_, rhs.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

private:
    static Rational from_mpq(mpq_class v) {
        Rational r;
        r.value_ = std::move(v);
        return r;
    }

    mpq_class value_{0};
};

/// {x} = x - floor(x), always in [0,1).
inline Rational frac(const Rational& x) {
    return x - Rational(x.floor());
}

/// The class of a rational in Q/Z, represented by its value in [0,1).
class Residue {
public:
    Residue() = default;
    explicit Residue(const Rational& x) : value_(frac(x)) {}

    const Rational& value() const { return value_; }
    bool is_zero() const { return value_.is_zero(); }

    friend Residue operator+(const Residue& x, const Residue& y) { return Residue(x.value_ + y.value_); }
    friend Residue operator-(const Residue& x, const Residue& y) { return Residue(x.value_ - y.value_); }
    friend bool operator==(const Residue&, const Residue&) = default;
    friend auto operator<=>(const Residue&, const Residue&) = default;

private:
    Rational value_;
};

struct UnitGroup {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> elements;  // ascending
};

/// Units k of Z/NZ with 0 < k < N. Empty for N = 1.
inline UnitGroup unit_group(std::uint64_t modulus) {
    if (modulus == 0)
        throw std::invalid_argument("unit_group: modulus must be positive");
    UnitGroup g{modulus, {}};
    for (std::uint64_t k = 1; k < modulus; ++k)
        if (std::gcd(k, modulus) == 1)
            g.elements.push_back(k);
    return g;
}

/// Least common multiple of the reduced denominators.
inline mpz_class lcm_denominator(std::span<const Rational> values) {
    if (values.empty())
        throw std::invalid_argument("lcm_denominator: empty sequence");
    mpz_class out = 1;
    for (const auto& v : values) {
        mpz_class den = v.denominator();
        mpz_lcm(out.get_mpz_t(), out.get_mpz_t(), den.get_mpz_t());
    }
    return out;
}

inline mpz_class lcm_denominator(std::initializer_list<Rational> values) {
    return lcm_denominator(std::span<const Rational>(values.begin(), values.size()));
}

}  // namespace hyperlog

template <>
struct std::hash<hyperlog::Rational> {
    std::size_t operator()(const hyperlog::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.to_string());
    }
};
