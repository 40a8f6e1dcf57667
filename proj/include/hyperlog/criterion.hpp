#pragma once

// Decidable side of the log-type question: validity of a parameter triple
// (a,b,q), its Hodge profile over (Z/NZ)^x and the criterion
//
//     {sq} + {s(a-q)} + {s(b-q)} + {s(q-a-b)} = 2   for every unit s mod N,
//
// together with exhaustive search over a fixed denominator and orbit
// reduction under unit twists and the a<->b swap.

#include "hyperlog/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace hyperlog {

/// Names the hypothesis a rejected triple violates.
class InvalidTriple : public std::invalid_argument {
public:
    InvalidTriple(std::string hypothesis, const std::string& what)
        : std::invalid_argument(what), hypothesis_(std::move(hypothesis)) {}
    const std::string& hypothesis() const { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// Largest modulus for which a profile is enumerated.
inline constexpr std::uint64_t kMaxProfileModulus = 10'000'000;

class ParameterTriple {
public:
    ParameterTriple(Rational a, Rational b, Rational q)
        : a_(std::move(a)), b_(std::move(b)), q_(std::move(q)) {
        auto reject = [&](const char* name) {
            throw InvalidTriple(name, std::string("invalid triple (") + a_.to_string() + ", " +
                                          b_.to_string() + ", " + q_.to_string() + "): " +
                                          name + " is an integer");
        };
        if (a_.is_integer()) reject("a");
        if (b_.is_integer()) reject("b");
        if (q_.is_integer()) reject("q");
        if ((q_ - a_).is_integer()) reject("q-a");
        if ((q_ - b_).is_integer()) reject("q-b");
        if ((q_ - a_ - b_).is_integer()) reject("q-a-b");
    }

    /// Returns nullopt instead of throwing.
    static std::optional<ParameterTriple> make(const Rational& a, const Rational& b, const Rational& q) {
        try {
            return ParameterTriple(a, b, q);
        } catch (const InvalidTriple&) {
            return std::nullopt;
        }
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& q() const { return q_; }

    /// Lowest common denominator N of a, b and q.
    std::uint64_t modulus() const {
        mpz_class n = lcm_denominator({a_, b_, q_});
        if (!n.fits_ulong_p() || n.get_ui() > kMaxProfileModulus)
            throw CapacityError("modulus " + n.get_str() + " exceeds profile capacity");
        return n.get_ui();
    }

    std::string to_string() const {
        return "(" + a_.to_string() + ", " + b_.to_string() + ", " + q_.to_string() + ")";
    }

    friend bool operator==(const ParameterTriple&, const ParameterTriple&) = default;
    friend auto operator<=>(const ParameterTriple& x, const ParameterTriple& y) {
        if (auto c = x.a_ <=> y.a_; c != 0) return c;
        if (auto c = x.b_ <=> y.b_; c != 0) return c;
        return x.q_ <=> y.q_;
    }

private:
    Rational a_, b_, q_;
};

/// Classes of (q, a-q, b-q, q-a-b) mod Z.
struct ExponentTuple {
    std::array<Residue, 4> c;
};

inline ExponentTuple exponent_tuple(const ParameterTriple& t) {
    return {{Residue(t.q()), Residue(t.a() - t.q()), Residue(t.b() - t.q()),
             Residue(t.q() - t.a() - t.b())}};
}

struct HodgeEntry {
    std::uint64_t s;
    int p;  // 0, 1 or 2
};

struct HodgeProfile {
    std::uint64_t modulus = 1;
    std::vector<HodgeEntry> entries;  // ascending in s

    int at(std::uint64_t s) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), s,
                                   [](const HodgeEntry& e, std::uint64_t v) { return e.s < v; });
        if (it == entries.end() || it->s != s)
            throw std::out_of_range("s is not a unit mod " + std::to_string(modulus));
        return it->p;
    }
};

struct CriterionReport {
    ParameterTriple triple;
    std::uint64_t modulus;
    HodgeProfile profile;
    bool is_log_type;
    std::optional<std::uint64_t> first_failure;
};

namespace detail {

/// Numerators of the exponent tuple over N, each in [1, N).
inline std::array<std::uint64_t, 4> scaled_exponents(const ParameterTriple& t, std::uint64_t n) {
    auto scaled = [n](const Rational& x) {
        Rational r = frac(x) * Rational(mpz_class(static_cast<unsigned long>(n)));
        return r.numerator().get_ui();  // r is an integer in [1, N)
    };
    return {scaled(t.q()), scaled(t.a() - t.q()), scaled(t.b() - t.q()), scaled(t.q() - t.a() - t.b())};
}

/// p_s from integer numerators: sum of (s*c_i mod N), divided by N, minus one.
inline int hodge_number(const std::array<std::uint64_t, 4>& c, std::uint64_t s, std::uint64_t n) {
    std::uint64_t total = 0;
    for (auto ci : c)
        total += (s % n) * ci % n;
    return static_cast<int>(total / n) - 1;
}

}  // namespace detail

inline HodgeProfile hodge_profile(const ParameterTriple& t) {
    const std::uint64_t n = t.modulus();
    const auto c = detail::scaled_exponents(t, n);
    HodgeProfile profile{n, {}};
    for (auto s : unit_group(n).elements)
        profile.entries.push_back({s, detail::hodge_number(c, s, n)});
    return profile;
}

inline CriterionReport check_log_type(const ParameterTriple& t) {
    HodgeProfile profile = hodge_profile(t);
    std::optional<std::uint64_t> failure;
    for (const auto& e : profile.entries)
        if (e.p != 1) {
            failure = e.s;
            break;
        }
    const auto n = profile.modulus;
    return {t, n, std::move(profile), !failure.has_value(), failure};
}

/// Representative with a, b, q in (0,1).
inline ParameterTriple normalize_mod_z(const ParameterTriple& t) {
    return ParameterTriple(frac(t.a()), frac(t.b()), frac(t.q()));
}

/// 2q = a + b mod Z: the classical digamma closed form applies.
inline bool is_watson_family(const ParameterTriple& t) {
    return (Rational(2) * t.q() - t.a() - t.b()).is_integer();
}

struct SearchOptions {
    bool exact_denominator = false;
    unsigned workers = 1;
    std::uint64_t capacity = 256;  // largest N accepted
};

/// All log-type normalized triples with denominators dividing N (or with
/// lcm exactly N), sorted lexicographically.
inline std::vector<CriterionReport> search_log_type(std::uint64_t n, const SearchOptions& options = {}) {
    if (n < 2)
        throw std::invalid_argument("search_log_type: N must be at least 2");
    if (n > options.capacity)
        throw CapacityError("N = " + std::to_string(n) + " exceeds search capacity " +
                            std::to_string(options.capacity));

    const auto units = unit_group(n).elements;
    const unsigned workers = std::max(1u, options.workers);

    // Worker w handles a-numerators congruent to w mod workers.
    std::vector<std::vector<std::array<std::uint64_t, 3>>> found(workers);
    auto scan = [&](unsigned w) {
        for (std::uint64_t ia = 1 + w; ia < n; ia += workers)
            for (std::uint64_t ib = 1; ib < n; ++ib)
                for (std::uint64_t iq = 1; iq < n; ++iq) {
                    if (iq == ia || iq == ib || (iq + 2 * n - ia - ib) % n == 0)
                        continue;
                    if (options.exact_denominator && std::gcd(std::gcd(ia, ib), std::gcd(iq, n)) != 1)
                        continue;
                    const std::array<std::uint64_t, 4> c{iq, (ia + n - iq) % n, (ib + n - iq) % n,
                                                         (iq + 2 * n - ia - ib) % n};
                    // p_s + p_{N-s} = 2, so the lower half of the units decides.
                    bool ok = true;
                    for (auto s : units) {
                        if (2 * s > n)
                            break;
                        if (detail::hodge_number(c, s, n) != 1) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok)
                        found[w].push_back({ia, ib, iq});
                }
    };
    if (workers == 1) {
        scan(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(scan, w);
    }

    std::vector<std::array<std::uint64_t, 3>> all;
    for (auto& part : found)
        all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());  // numerator order over a common N is lexicographic order

    const long den = static_cast<long>(n);
    std::vector<CriterionReport> reports;
    reports.reserve(all.size());
    for (const auto& [ia, ib, iq] : all)
        reports.push_back(check_log_type(ParameterTriple(Rational(static_cast<long>(ia), den),
                                                         Rational(static_cast<long>(ib), den),
                                                         Rational(static_cast<long>(iq), den))));
    return reports;
}

/// Residues of (s*a, s*b, s*q), or nullopt if the result is not a valid triple.
inline std::optional<ParameterTriple> twist(const ParameterTriple& t, std::uint64_t s) {
    const Rational k(mpz_class(static_cast<unsigned long>(s)));
    return ParameterTriple::make(frac(k * t.a()), frac(k * t.b()), frac(k * t.q()));
}

struct OrbitClass {
    ParameterTriple representative;
    std::vector<ParameterTriple> members;  // sorted; drawn from the input
};

/// Groups triples under (a,b,q) -> (s*a, s*b, s*q) for units s mod N and the
/// a<->b swap. A twist producing an invalid triple does not link anything.
inline std::vector<OrbitClass> orbit_classes(std::span<const CriterionReport> reports, std::uint64_t n) {
    const auto units = unit_group(n).elements;
    std::map<ParameterTriple, std::vector<ParameterTriple>> by_key;
    for (const auto& r : reports) {
        if (n % r.modulus != 0)
            throw std::invalid_argument("orbit_classes: report modulus does not divide N");
        ParameterTriple base = normalize_mod_z(r.triple);
        ParameterTriple key = base;
        for (auto s : units) {
            auto tw = twist(base, s);
            if (!tw)
                continue;
            key = std::min(key, *tw);
            key = std::min(key, ParameterTriple(tw->b(), tw->a(), tw->q()));
        }
        by_key[key].push_back(r.triple);
    }
    std::vector<OrbitClass> out;
    for (auto& [key, members] : by_key) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        out.push_back({members.front(), std::move(members)});
    }
    std::sort(out.begin(), out.end(),
              [](const OrbitClass& x, const OrbitClass& y) { return x.representative < y.representative; });
    return out;
}

}  // namespace hyperlog
