#pragma once

// Labelled constant bases for relation finding, verification of relations
// at a higher precision, and their JSON form.

#include "hyperlog/bigreal.hpp"
#include "hyperlog/expression.hpp"
#include "hyperlog/pslq.hpp"

#include "json.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperlog {

struct ConstantBasis {
    std::vector<std::string> labels;  // evaluable descriptors
    std::vector<BigReal> values;
    Precision precision;
};

/// Evaluates every label at precision p.
inline ConstantBasis make_basis(std::vector<std::string> labels, Precision p) {
    ConstantBasis basis{std::move(labels), {}, p};
    for (const auto& label : basis.labels) {
        BigReal v = evaluate_expression(label, p);
        if (!v.is_finite())
            throw DomainError("basis element '" + label + "' is not finite");
        basis.values.push_back(std::move(v));
    }
    return basis;
}

/// {1, pi, euler_gamma, log(2), log(sin(pi*n/N)) for 1 <= n <= (N-1)/2}:
/// every digamma value at denominator N is a rational combination of these,
/// up to the algebraic cotangent and cosine factors.
inline ConstantBasis build_log_basis(std::uint64_t n, Precision p, bool include_euler_gamma = true) {
    if (n < 2)
        throw std::invalid_argument("build_log_basis: N must be at least 2");
    std::vector<std::string> labels{"1", "pi"};
    if (include_euler_gamma)
        labels.emplace_back("euler_gamma");
    labels.emplace_back("log(2)");
    for (std::uint64_t k = 1; k <= (n - 1) / 2; ++k)
        labels.push_back("log(sin(pi*" + std::to_string(k) + "/" + std::to_string(n) + "))");
    return make_basis(std::move(labels), p);
}

/// sqrt(d) for squarefree d > 1 built from the odd primes dividing N, and 2
/// when 4 | N.
inline std::vector<std::string> default_prefactors(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    std::uint64_t m = n;
    for (std::uint64_t r = 2; r * r <= m; ++r)
        if (m % r == 0) {
            primes.push_back(r);
            while (m % r == 0)
                m /= r;
        }
    if (m > 1)
        primes.push_back(m);
    std::erase_if(primes, [n](std::uint64_t r) { return r == 2 && n % 4 != 0; });
    std::vector<std::string> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << primes.size()); ++mask) {
        std::uint64_t d = 1;
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (mask & (std::uint64_t{1} << i))
                d *= primes[i];
        out.push_back("sqrt(" + std::to_string(d) + ")");
    }
    return out;
}

/// Appends prefactor*element for every prefactor and element, lifting a
/// search for algebraic coefficients to an integer relation search.
inline ConstantBasis with_prefactors(const ConstantBasis& basis, std::span<const std::string> prefactors) {
    ConstantBasis out = basis;
    for (const auto& factor : prefactors) {
        const BigReal f = evaluate_expression(factor, basis.precision);
        for (std::size_t i = 0; i < basis.labels.size(); ++i) {
            const std::string& label = basis.labels[i];
            out.labels.push_back(label == "1" ? factor : factor + "*" + label);
            out.values.push_back(f * basis.values[i]);
        }
    }
    return out;
}

/// Drops elements until no relation of norm <= max_norm remains among the
/// rest. Each round removes the last element involved in a detected relation.
inline ConstantBasis independent_subset(ConstantBasis basis, double max_norm) {
    while (basis.values.size() >= 2) {
        const auto outcome = pslq(basis.values, basis.precision, max_norm);
        if (outcome.status != PslqStatus::found)
            break;
        const auto& m = outcome.relation->coefficients;
        std::size_t drop = m.size();
        while (drop-- > 0)
            if (m[drop] != 0)
                break;
        basis.labels.erase(basis.labels.begin() + static_cast<std::ptrdiff_t>(drop));
        basis.values.erase(basis.values.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    return basis;
}

/// Recomputes the basis at p2 >= P + 20 and accepts iff the residual has
/// shrunk to the new detection threshold, i.e. in step with the precision.
inline bool verify_relation(const Relation& relation, const ConstantBasis& basis, Precision p2, int safety_digits = 15) {
    if (p2.digits < basis.precision.digits + 20)
        throw std::invalid_argument("verify_relation needs at least 20 more digits");
    if (relation.coefficients.size() != basis.labels.size())
        throw std::invalid_argument("relation length does not match the basis");
    BigReal sum(p2);
    BigReal scale(1L, p2);
    for (std::size_t i = 0; i < basis.labels.size(); ++i) {
        if (relation.coefficients[i] == 0)
            continue;
        const BigReal term = evaluate_expression(basis.labels[i], p2) * static_cast<long>(relation.coefficients[i]);
        scale = max(scale, abs(term));
        sum += term;
    }
    return abs(sum) <= pow10(-(p2.digits - safety_digits), p2) * scale;
}

struct RelationReport {
    std::vector<std::string> labels;
    PslqOutcome outcome;
    Precision precision;
    bool verified = false;
};

/// PSLQ on the basis followed by verification at P + 50 when a relation
/// turns up.
inline RelationReport find_relation(const ConstantBasis& basis, double max_norm, int verify_extra_digits = 50) {
    RelationReport report{basis.labels, pslq(basis.values, basis.precision, max_norm), basis.precision, false};
    if (report.outcome.status == PslqStatus::found)
        report.verified = verify_relation(*report.outcome.relation, basis,
                                          Precision{basis.precision.digits + verify_extra_digits});
    return report;
}

inline std::string_view to_string(PslqStatus s) {
    switch (s) {
        case PslqStatus::found: return "found";
        case PslqStatus::excluded: return "excluded";
        case PslqStatus::precision_exhausted: return "precision_exhausted";
    }
    return "?";
}

/// {schema, labels, coefficients, residual_digits, precision, verified}, plus
/// the search status and exclusion bound.
inline nlohmann::ordered_json to_json(const RelationReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["status"] = std::string(to_string(report.outcome.status));
    j["labels"] = report.labels;
    if (report.outcome.relation) {
        const auto& r = *report.outcome.relation;
        j["coefficients"] = r.coefficients;
        j["residual_digits"] = r.residual.is_zero() ? report.precision.digits + kGuardDigits
                                                    : static_cast<int>(std::floor(-r.residual.log10_abs()));
        j["norm"] = r.norm;
        j["confidence_digits"] = std::round(r.confidence_digits * 10.0) / 10.0;
    } else {
        j["coefficients"] = nullptr;
        j["residual_digits"] = nullptr;
    }
    j["precision"] = report.precision.digits;
    j["verified"] = report.verified;
    j["exclusion_bound"] = std::floor(report.outcome.exclusion_bound);
    return j;
}

}  // namespace hyperlog
