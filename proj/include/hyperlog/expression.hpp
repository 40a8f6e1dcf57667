#pragma once

// Symbolic constant descriptors such as "12^(3/4)/2*log(2)", "pi*sqrt(3)"
// or "V(1/6,5/6,1/4)". A descriptor is parsed once and can be evaluated at
// any precision, which is what lets a relation found at one precision be
// re-checked at another.
//
// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?
//   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Names: pi, euler_gamma, e. Functions: log exp sqrt sin cos tan cot arccos
// atan, and with rational arguments psi Gamma Beta V watson hyp3f2.

#include "hyperlog/bigreal.hpp"
#include "hyperlog/criterion.hpp"
#include "hyperlog/hyper.hpp"
#include "hyperlog/special.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hyperlog {

class ExpressionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class Expression {
public:
    static Expression parse(std::string_view text) {
        Parser parser{text, 0};
        auto node = parser.expression();
        parser.skip_space();
        if (parser.pos != text.size())
            throw ExpressionError("unexpected '" + std::string(text.substr(parser.pos)) + "' in '" +
                                  std::string(text) + "'");
        return Expression(std::string(text), std::move(node));
    }

    const std::string& text() const { return text_; }

    BigReal evaluate(Precision p) const { return root_->evaluate(p); }

    /// Exact value when the expression is rational arithmetic only.
    std::optional<Rational> exact() const { return root_->exact(); }

private:
    struct Node {
        virtual ~Node() = default;
        virtual BigReal evaluate(Precision p) const = 0;
        virtual std::optional<Rational> exact() const { return std::nullopt; }
    };
    using NodePtr = std::shared_ptr<const Node>;

    static Rational require_exact(const NodePtr& node, std::string_view what) {
        auto v = node->exact();
        if (!v)
            throw ExpressionError(std::string(what) + " needs a rational argument");
        return *v;
    }

    struct Number : Node {
        Rational value;
        explicit Number(Rational v) : value(std::move(v)) {}
        BigReal evaluate(Precision p) const override { return BigReal(value, p); }
        std::optional<Rational> exact() const override { return value; }
    };

    struct Named : Node {
        std::string name;
        explicit Named(std::string n) : name(std::move(n)) {}
        BigReal evaluate(Precision p) const override {
            if (name == "pi") return const_pi(p);
            if (name == "euler_gamma") return const_euler_gamma(p);
            return exp(BigReal(1L, p));  // "e"
        }
    };

    struct Negate : Node {
        NodePtr arg;
        explicit Negate(NodePtr a) : arg(std::move(a)) {}
        BigReal evaluate(Precision p) const override { return -arg->evaluate(p); }
        std::optional<Rational> exact() const override {
            auto v = arg->exact();
            return v ? std::optional<Rational>(-*v) : std::nullopt;
        }
    };

    struct Binary : Node {
        char op;
        NodePtr lhs, rhs;
        Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}

        std::optional<Rational> exact() const override {
            auto l = lhs->exact();
            auto r = rhs->exact();
            if (!l || !r)
                return std::nullopt;
            switch (op) {
                case '+': return *l + *r;
                case '-': return *l - *r;
                case '*': return *l * *r;
                case '/':
                    if (r->is_zero())
                        throw DomainError("division by zero in expression");
                    return *l / *r;
                default:
                    if (r->is_integer() && r->numerator().fits_slong_p() && abs(r->numerator()) <= 4096) {
                        const long k = r->numerator().get_si();
                        if (l->is_zero() && k < 0)
                            throw DomainError("zero to a negative power");
                        Rational out(1);
                        for (long i = 0; i < (k < 0 ? -k : k); ++i)
                            out *= *l;
                        return k < 0 ? Rational(1) / out : out;
                    }
                    return std::nullopt;
            }
        }

        BigReal evaluate(Precision p) const override {
            if (auto v = exact())
                return BigReal(*v, p);
            if (op == '^') {
                const Rational r = require_exact(rhs, "exponent");
                if (r.is_integer() && r.numerator().fits_slong_p())
                    return pow(lhs->evaluate(p), r.numerator().get_si());
                return pow_rational(lhs->evaluate(p), r);
            }
            BigReal l = lhs->evaluate(p);
            BigReal r = rhs->evaluate(p);
            switch (op) {
                case '+': return l + r;
                case '-': return l - r;
                case '*': return l * r;
                default: return l / r;
            }
        }
    };

    struct Call : Node {
        std::string name;
        std::vector<NodePtr> args;
        Call(std::string n, std::vector<NodePtr> a) : name(std::move(n)), args(std::move(a)) {}

        Rational arg(std::size_t i) const { return require_exact(args[i], name); }

        BigReal evaluate(Precision p) const override {
            if (name == "psi") return digamma_rational(arg(0), p);
            if (name == "Gamma") return gamma_rational(arg(0), p);
            if (name == "Beta") return beta_rational(arg(0), arg(1), p);
            if (name == "V")
                return eval_V(ParameterTriple(arg(0), arg(1), arg(2)), p, Backend::series).value.value;
            if (name == "watson") return eval_watson(arg(0), arg(1), p).value;
            if (name == "hyp3f2")
                return eval_3f2_series({arg(0), arg(1), arg(2)}, {arg(3), arg(4)}, p).value;
            const BigReal x = args[0]->evaluate(p);
            if (name == "log") return log(x);
            if (name == "exp") return exp(x);
            if (name == "sqrt") return sqrt(x);
            if (name == "sin") return sin(x);
            if (name == "cos") return cos(x);
            if (name == "tan") return tan(x);
            if (name == "cot") return cot(x);
            if (name == "arccos") return acos(x);
            return atan(x);  // "atan"
        }
    };

    struct Parser {
        std::string_view text;
        std::size_t pos;

        void skip_space() {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
                ++pos;
        }
        bool accept(char c) {
            skip_space();
            if (pos < text.size() && text[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        [[noreturn]] void fail(const std::string& what) const {
            throw ExpressionError(what + " at offset " + std::to_string(pos) + " in '" + std::string(text) + "'");
        }

        NodePtr expression() {
            NodePtr node = term();
            for (;;) {
                if (accept('+'))
                    node = std::make_shared<Binary>('+', node, term());
                else if (accept('-'))
                    node = std::make_shared<Binary>('-', node, term());
                else
                    return node;
            }
        }
        NodePtr term() {
            NodePtr node = unary();
            for (;;) {
                if (accept('*'))
                    node = std::make_shared<Binary>('*', node, unary());
                else if (accept('/'))
                    node = std::make_shared<Binary>('/', node, unary());
                else
                    return node;
            }
        }
        NodePtr unary() {
            if (accept('-'))
                return std::make_shared<Negate>(unary());
            return power();
        }
        NodePtr power() {
            NodePtr base = primary();
            if (accept('^'))
                return std::make_shared<Binary>('^', base, unary());
            return base;
        }
        NodePtr primary() {
            skip_space();
            if (pos >= text.size())
                fail("unexpected end");
            if (accept('(')) {
                NodePtr inner = expression();
                if (!accept(')'))
                    fail("expected ')'");
                return inner;
            }
            const char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c)))
                return number();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
                return named();
            fail(std::string("unexpected '") + c + "'");
        }
        NodePtr number() {
            const std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                ++pos;
            Rational value = Rational::parse(text.substr(start, pos - start));
            if (pos < text.size() && text[pos] == '.') {
                ++pos;
                const std::size_t frac_start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                const auto digits = text.substr(frac_start, pos - frac_start);
                if (!digits.empty()) {
                    mpz_class scale;
                    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits.size());
                    value += Rational(mpz_class(std::string(digits)), scale);
                }
            }
            return std::make_shared<Number>(std::move(value));
        }
        NodePtr named() {
            const std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name(text.substr(start, pos - start));
            if (!accept('(')) {
                if (name == "pi" || name == "euler_gamma" || name == "e")
                    return std::make_shared<Named>(name);
                fail("unknown constant '" + name + "'");
            }
            std::vector<NodePtr> args{expression()};
            while (accept(','))
                args.push_back(expression());
            if (!accept(')'))
                fail("expected ')'");
            const std::size_t want = arity(name);
            if (want == 0)
                fail("unknown function '" + name + "'");
            if (args.size() != want)
                fail(name + " takes " + std::to_string(want) + " argument(s)");
            if (rational_only(name))
                for (const auto& arg : args)
                    if (!arg->exact())
                        fail(name + " needs rational arguments");
            return std::make_shared<Call>(std::move(name), std::move(args));
        }
        static bool rational_only(const std::string& name) {
            return name == "psi" || name == "Gamma" || name == "Beta" || name == "V" || name == "watson" ||
                   name == "hyp3f2";
        }
        static std::size_t arity(const std::string& name) {
            for (const char* f : {"log", "exp", "sqrt", "sin", "cos", "tan", "cot", "arccos", "atan", "psi", "Gamma"})
                if (name == f)
                    return 1;
            if (name == "Beta" || name == "watson") return 2;
            if (name == "V") return 3;
            if (name == "hyp3f2") return 5;
            return 0;
        }
    };

    Expression(std::string text, NodePtr root) : text_(std::move(text)), root_(std::move(root)) {}

    std::string text_;
    NodePtr root_;
};

inline BigReal evaluate_expression(std::string_view text, Precision p) {
    return Expression::parse(text).evaluate(p);
}

}  // namespace hyperlog
