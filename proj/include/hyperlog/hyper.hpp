#pragma once

// V(a,b,q) = B(a,b) 3F2(a,b,q; a+b,q+1; 1) through two independent
// backends, and the closed forms it is checked against: Dixon's transform,
// Watson's digamma formula and the explicit (1/6, 5/6, 1/4) identity.

#include "hyperlog/bigreal.hpp"
#include "hyperlog/criterion.hpp"
#include "hyperlog/quadrature.hpp"
#include "hyperlog/series.hpp"
#include "hyperlog/special.hpp"

#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperlog {

enum class Backend { both, series, quadrature };

inline std::string_view to_string(Backend b) {
    switch (b) {
        case Backend::both: return "both";
        case Backend::series: return "series";
        case Backend::quadrature: return "quadrature";
    }
    return "?";
}

inline Backend parse_backend(std::string_view text) {
    if (text == "both") return Backend::both;
    if (text == "series") return Backend::series;
    if (text == "quadrature") return Backend::quadrature;
    throw std::invalid_argument("unknown backend '" + std::string(text) + "'");
}

/// The two backends disagree beyond their combined error estimates.
class BackendDisagreement : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HyperValue {
    ParameterTriple triple;
    EvalResult value;
    std::optional<BigReal> backend_agreement;  // |series - quadrature| when both ran
    std::optional<EvalResult> series;
    std::optional<EvalResult> quadrature;
};

namespace detail {

inline EvalResult scaled(EvalResult r, const BigReal& factor, std::string method) {
    r.value *= factor;
    r.error_estimate = abs(r.error_estimate * factor);
    r.method = std::move(method);
    return r;
}

inline EvalResult v_by_series(const ParameterTriple& t, Precision p) {
    const BigReal beta = beta_rational(t.a(), t.b(), p);
    return scaled(eval_3f2_series({t.a(), t.b(), t.q()}, {t.a() + t.b(), t.q() + Rational(1)}, p), beta, "series");
}

inline EvalResult v_by_quadrature(const ParameterTriple& t, Precision p) {
    const BigReal beta = beta_rational(t.a(), t.b(), p);
    return scaled(eval_3f2_quadrature(t.a(), t.b(), t.q(), p), beta, "quadrature");
}

}  // namespace detail

/// V(a,b,q) = B(a,b) 3F2(a,b,q; a+b,q+1; 1). Both backends cover every
/// valid triple, including q < 0, without shifting q.
inline HyperValue eval_V(const ParameterTriple& t, Precision p, Backend backend = Backend::both) {
    if (backend == Backend::series) {
        auto s = detail::v_by_series(t, p);
        return {t, s, std::nullopt, s, std::nullopt};
    }
    if (backend == Backend::quadrature) {
        auto q = detail::v_by_quadrature(t, p);
        return {t, q, std::nullopt, std::nullopt, q};
    }
    auto quad_future = std::async(std::launch::async, [&] { return detail::v_by_quadrature(t, p); });
    EvalResult s = detail::v_by_series(t, p);
    EvalResult q = quad_future.get();
    BigReal agreement = abs(s.value - q.value);
    const BigReal slack = pow10(-(p.digits + kGuardDigits - 3), p) * max(abs(s.value), BigReal(1L, p));
    if (agreement > s.error_estimate + q.error_estimate + slack)
        throw BackendDisagreement("backends disagree on V" + t.to_string() + ": |series - quadrature| = " +
                                  agreement.to_string(6));
    EvalResult combined = s;
    combined.method = "both";
    combined.error_estimate = max(s.error_estimate, agreement);
    combined.work = s.work + q.work;
    return {t, std::move(combined), std::move(agreement), std::move(s), std::move(q)};
}

/// Closed form of V at the Watson point q = (a+b-1)/2:
///   [psi((a+1)/2) + psi((b+1)/2) - psi(a/2) - psi(b/2)] / 2.
inline EvalResult eval_watson(const Rational& a, const Rational& b, Precision p) {
    const Rational half(1, 2);
    BigReal value = digamma_rational((a + Rational(1)) * half, p) + digamma_rational((b + Rational(1)) * half, p) -
                    digamma_rational(a * half, p) - digamma_rational(b * half, p);
    value /= 2L;
    BigReal error = pow10(-(p.digits + kGuardDigits - 2), p) * max(abs(value), BigReal(1L, p));
    return {std::move(value), std::move(error), "watson", 4};
}

/// The Watson parameter q = (a+b-1)/2.
inline Rational watson_q(const Rational& a, const Rational& b) {
    return (a + b - Rational(1)) / Rational(2);
}

struct IdentityCheck {
    BigReal lhs;
    BigReal rhs;
    BigReal difference;  // lhs - rhs
};

/// Both sides of V(a,b,q) = q/(ab) 3F2(1,1,a+b-q; a+1,b+1; 1). The right side
/// converges only for q > 0.
inline IdentityCheck eval_dixon(const ParameterTriple& t, Precision p, Backend backend = Backend::series) {
    if (t.q().sign() <= 0)
        throw DomainError("Dixon form diverges for q <= 0 (parametric excess is q)");
    BigReal lhs = eval_V(t, p, backend).value.value;
    const Rational factor = t.q() / (t.a() * t.b());
    BigReal rhs = eval_3f2_series({Rational(1), Rational(1), t.a() + t.b() - t.q()},
                                  {t.a() + Rational(1), t.b() + Rational(1)}, p)
                      .value *
                  factor;
    BigReal diff = lhs - rhs;
    return {std::move(lhs), std::move(rhs), std::move(diff)};
}

namespace intro {

inline BigReal scale(Precision p) { return pow_rational(Rational(12), Rational(3, 4), p); }

/// (12^(3/4)/2) log((3^(5/4) - 3^(3/4) + sqrt 2) / (3^(5/4) - 3^(3/4) - sqrt 2))
inline BigReal log_term(Precision p) {
    const BigReal d = pow_rational(Rational(3), Rational(5, 4), p) - pow_rational(Rational(3), Rational(3, 4), p);
    const BigReal r2 = sqrt(BigReal(2L, p));
    return scale(p) / 2L * log((d + r2) / (d - r2));
}

/// 12^(3/4) arccos((3^(5/4) + 3^(3/4)) / (2 sqrt(5 + 3 sqrt 3)))
inline BigReal arccos_term(Precision p) {
    const BigReal s = pow_rational(Rational(3), Rational(5, 4), p) + pow_rational(Rational(3), Rational(3, 4), p);
    const BigReal root = sqrt(5L + 3L * sqrt(BigReal(3L, p)));
    return scale(p) * acos(s / (2L * root));
}

/// 3^(5/4) - 3^(3/4) - sqrt 2; the log argument is positive iff this is.
inline BigReal log_denominator(Precision p) {
    return pow_rational(Rational(3), Rational(5, 4), p) - pow_rational(Rational(3), Rational(3, 4), p) -
           sqrt(BigReal(2L, p));
}

}  // namespace intro

/// 2 pi 3F2(1/6, 5/6, 1/4; 1, 5/4; 1) against its explicit log/arccos form.
inline IdentityCheck eval_intro_identity(Precision p) {
    BigReal lhs = 2L * const_pi(p) *
                  eval_3f2_series({Rational(1, 6), Rational(5, 6), Rational(1, 4)}, {Rational(1), Rational(5, 4)}, p)
                      .value;
    BigReal rhs = intro::log_term(p) - intro::arccos_term(p);
    BigReal diff = lhs - rhs;
    return {std::move(lhs), std::move(rhs), std::move(diff)};
}

}  // namespace hyperlog
