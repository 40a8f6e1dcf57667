#include "hyperlog/basis.hpp"
#include "hyperlog/expression.hpp"
#include "hyperlog/pslq.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hyperlog;

namespace {

const Precision P{50};

std::vector<BigReal> values(std::initializer_list<const char*> labels, Precision p = P) {
    std::vector<BigReal> out;
    for (const char* l : labels)
        out.push_back(evaluate_expression(l, p));
    return out;
}

}  // namespace

TEST(Expression, EvaluatesConstantsAndFunctions) {
    EXPECT_LT(abs(evaluate_expression("log(4) - 2*log(2)", P)).log10_abs(), -55);
    EXPECT_LT(abs(evaluate_expression("Gamma(1/2)^2 - pi", P)).log10_abs(), -55);
    EXPECT_LT(abs(evaluate_expression("psi(1) + euler_gamma", P)).log10_abs(), -55);
    EXPECT_LT(abs(evaluate_expression("Beta(1/6, 5/6) - 2*pi", P)).log10_abs(), -55);
    EXPECT_LT(abs(evaluate_expression("cot(pi/4) - 1", P)).log10_abs(), -55);
    EXPECT_LT(abs(evaluate_expression("hyp3f2(1,1,1,2,2) - pi^2/6", P)).log10_abs(), -45);
    EXPECT_LT(abs(evaluate_expression("V(1/3,1/2,-1/12) - watson(1/3,1/2)", P)).log10_abs(), -45);
    EXPECT_LT(abs(evaluate_expression("-2^2 + 4", P)).log10_abs(), -55);
}

TEST(Expression, ExactRationalsAndErrors) {
    auto e = Expression::parse("(1/3 + 0.5) * 6");
    ASSERT_TRUE(e.exact());
    EXPECT_EQ(*e.exact(), Rational(5));
    EXPECT_FALSE(Expression::parse("pi").exact());
    for (const char* bad : {"", "1 +", "foo(2)", "log(2", "V(1/2, pi, 1/3)", "2 ** 3"})
        EXPECT_THROW(Expression::parse(bad), ExpressionError) << bad;
}

TEST(Pslq, LogTwoAndLogFour) {
    const auto x = values({"log(2)", "log(4)"});
    const auto out = pslq(x, P, 1000);
    ASSERT_EQ(out.status, PslqStatus::found);
    EXPECT_EQ(out.relation->coefficients, (std::vector<std::int64_t>{2, -1}));
    EXPECT_EQ(out.relation->norm, 2);
}

TEST(Pslq, GoldenRatio) {
    const auto x = values({"1", "(1+sqrt(5))/2", "((1+sqrt(5))/2)^2"});
    const auto out = pslq(x, P, 1000);
    ASSERT_EQ(out.status, PslqStatus::found);
    EXPECT_EQ(out.relation->coefficients, (std::vector<std::int64_t>{1, 1, -1}));
}

TEST(Pslq, RecoversPlantedRelations) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coef(-9, 9);
    const auto base = values({"pi", "log(3)", "sqrt(7)", "euler_gamma"});
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<long> m(5);
        for (auto& c : m)
            c = coef(rng);
        m[4] = coef(rng) >= 0 ? 7 : -5;
        BigReal last(0L, P);
        for (std::size_t i = 0; i < 4; ++i)
            last -= base[i] * m[i];
        std::vector<BigReal> x = base;
        x.push_back(last / m[4]);
        const auto out = pslq(x, P, 1000);
        ASSERT_EQ(out.status, PslqStatus::found) << trial;
        // proportional to m
        const auto& found = out.relation->coefficients;
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                EXPECT_EQ(found[i] * m[j], found[j] * m[i]);
    }
}

TEST(Pslq, ExclusionBound) {
    const auto out = pslq(values({"1", "pi", "log(2)"}), P, 1000);
    EXPECT_EQ(out.status, PslqStatus::excluded);
    EXPECT_GE(out.exclusion_bound, 1000.0);
    EXPECT_FALSE(out.relation);
}

TEST(Pslq, RationalEntryIsARelation) {
    // 47/10 is rational, so 47*1 - 10*(47/10) = 0 has norm 47.
    const auto out = pslq(values({"1", "pi", "47/10"}), P, 1000);
    ASSERT_EQ(out.status, PslqStatus::found);
    EXPECT_EQ(out.relation->coefficients, (std::vector<std::int64_t>{47, 0, -10}));
}

TEST(Pslq, ZeroEntryAndExhaustion) {
    const auto zero = pslq(values({"pi", "0", "log(2)"}), P, 10);
    ASSERT_EQ(zero.status, PslqStatus::found);
    EXPECT_EQ(zero.relation->coefficients, (std::vector<std::int64_t>{0, 1, 0}));

    const auto tiny = pslq(values({"1", "pi", "log(2)", "log(3)", "euler_gamma", "sqrt(2)"}, Precision{20}), Precision{20},
                           1e12);
    EXPECT_EQ(tiny.status, PslqStatus::precision_exhausted);
    EXPECT_THROW(pslq(values({"pi"}), P, 10), std::invalid_argument);
}

TEST(Verify, RejectsFabricatedNearRelation) {
    const auto basis = make_basis({"pi", "log(2)", "pi + 2*log(2) + 10^(-40)"}, P);
    const auto report = find_relation(basis, 1000);
    ASSERT_EQ(report.outcome.status, PslqStatus::found);
    EXPECT_FALSE(report.verified);
}

TEST(Verify, AcceptsTrueRelationAndChecksArguments) {
    const auto basis = make_basis({"log(2)", "log(4)"}, P);
    const auto report = find_relation(basis, 1000);
    ASSERT_TRUE(report.verified);
    EXPECT_THROW(verify_relation(*report.outcome.relation, basis, Precision{60}), std::invalid_argument);
}

TEST(Basis, IntroRelation) {
    const auto basis = make_basis({"V(1/6,5/6,1/4)", "12^(3/4)/2*log((3^(5/4)-3^(3/4)+sqrt(2))/(3^(5/4)-3^(3/4)-sqrt(2)))",
                                   "12^(3/4)*arccos((3^(5/4)+3^(3/4))/(2*sqrt(5+3*sqrt(3))))"},
                                  P);
    const auto report = find_relation(basis, 1000);
    ASSERT_EQ(report.outcome.status, PslqStatus::found);
    EXPECT_EQ(report.outcome.relation->coefficients, (std::vector<std::int64_t>{1, -1, 1}));
    EXPECT_TRUE(report.verified);
    const auto j = to_json(report);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["status"], "found");
}

TEST(Basis, LogBasisAndPrefactors) {
    const auto b = build_log_basis(12, P);
    EXPECT_EQ(b.labels.size(), 4u + 5u);
    EXPECT_EQ(b.labels.back(), "log(sin(pi*5/12))");
    EXPECT_EQ(default_prefactors(12), (std::vector<std::string>{"sqrt(2)", "sqrt(3)", "sqrt(6)"}));
    EXPECT_EQ(default_prefactors(6), (std::vector<std::string>{"sqrt(3)"}));
    EXPECT_TRUE(default_prefactors(8).size() == 1 && default_prefactors(8)[0] == "sqrt(2)");
    // log(sin(pi/6)) = -log(2) gets dropped
    const auto reduced = independent_subset(build_log_basis(6, P), 1000);
    EXPECT_EQ(reduced.labels, (std::vector<std::string>{"1", "pi", "euler_gamma", "log(2)", "log(sin(pi*2/6))"}));
}

TEST(Basis, WatsonValueAtSixNeedsSqrtThree) {
    const auto logs = independent_subset(build_log_basis(6, P, false), 1000);
    std::vector<std::string> factors{"sqrt(3)"};
    auto basis = with_prefactors(logs, factors);
    basis.labels.insert(basis.labels.begin(), "watson(1/3,1/2)");
    basis.values.insert(basis.values.begin(), evaluate_expression("watson(1/3,1/2)", P));
    const auto report = find_relation(basis, 1000);
    ASSERT_EQ(report.outcome.status, PslqStatus::found);
    EXPECT_NE(report.outcome.relation->coefficients[0], 0);
    EXPECT_TRUE(report.verified);
}

TEST(Pslq, PlantedRelationsUpToEightElements) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<long> coef(-100, 100);
    const auto pool = values({"pi", "log(3)", "sqrt(7)", "euler_gamma", "log(5)", "exp(1)", "3^(1/3)"});
    for (std::size_t size = 3; size <= 8; ++size)
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<long> m(size);
            for (auto& c : m)
                c = coef(rng);
            if (m.back() == 0)
                m.back() = 1;
            std::vector<BigReal> x(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size - 1));
            BigReal last(0L, P);
            for (std::size_t i = 0; i + 1 < size; ++i)
                last -= x[i] * m[i];
            x.push_back(last / m.back());
            const auto out = pslq(x, P, 1000);
            ASSERT_EQ(out.status, PslqStatus::found) << size << "/" << trial;
            const auto& found = out.relation->coefficients;
            for (std::size_t i = 0; i < size; ++i)
                EXPECT_EQ(found[i] * m.back(), found.back() * m[i]);
        }
}

TEST(Pslq, ExclusionIsSoundOnSmallNorms) {
    // Every integer vector with norm <= min(bound, 50) leaves a residual above threshold.
    for (auto labels : {std::vector<std::string>{"1", "pi", "log(2)"}, std::vector<std::string>{"sqrt(2)", "sqrt(3)", "log(3)"}}) {
        const auto basis = make_basis(labels, P);
        const auto out = pslq(basis.values, P, 1000);
        ASSERT_EQ(out.status, PslqStatus::excluded);
        const long reach = static_cast<long>(std::min(out.exclusion_bound, 50.0));
        std::array<double, 3> d{};
        for (int i = 0; i < 3; ++i)
            d[i] = basis.values[i].to_double();
        for (long i = -reach; i <= reach; ++i)
            for (long j = -reach; j <= reach; ++j)
                for (long k = -reach; k <= reach; ++k) {
                    if (i == 0 && j == 0 && k == 0)
                        continue;
                    if (std::fabs(i * d[0] + j * d[1] + k * d[2]) > 1e-9)
                        continue;
                    const BigReal r = basis.values[0] * i + basis.values[1] * j + basis.values[2] * k;
                    EXPECT_GT(abs(r), pow10(-(P.digits - 15), P)) << i << " " << j << " " << k;
                }
    }
}

TEST(Basis, SmallModuli) {
    EXPECT_EQ(build_log_basis(2, P).labels, (std::vector<std::string>{"1", "pi", "euler_gamma", "log(2)"}));
    const auto four = pslq(build_log_basis(4, P).values, P, 1000);
    ASSERT_EQ(four.status, PslqStatus::found);
    EXPECT_EQ(four.relation->coefficients, (std::vector<std::int64_t>{0, 0, 0, 1, 2}));
}

TEST(Verify, DirectChecks) {
    const auto near = make_basis({"pi", "log(2)", "pi + 2*log(2) + 10^(-12)"}, P);
    const Relation fake{{1, 2, -1}, BigReal(P), 2, 0.0};
    EXPECT_FALSE(verify_relation(fake, near, Precision{100}));

    const auto logs = make_basis({"log(2)", "log(4)"}, P);
    const Relation exact{{2, -1}, BigReal(P), 2, 0.0};
    for (int p2 : {70, 100, 200})
        EXPECT_TRUE(verify_relation(exact, logs, Precision{p2})) << p2;
}
