// hyperlog command-line front end.

#include "hyperlog/hyperlog.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using hyperlog::BigReal;
using hyperlog::ParameterTriple;
using hyperlog::Precision;
using hyperlog::Rational;
using Json = nlohmann::ordered_json;

enum ExitCode : int {
    kOk = 0,
    kNegative = 1,          // not log-type / no relation
    kInvalidTriple = 2,
    kNumericFailure = 3,
    kPrecisionExhausted = 4,
    kDomainError = 5,
    kUnverifiedRelation = 6,
    kUsage = 64,
    kCapacity = 65,
    kNoInput = 66,
    kInternal = 70,
};

struct RunConfig {
    int precision = 50;
    std::string backend = "both";
    std::string format = "text";
    bool exact_denominator = false;
    double max_norm = 1000.0;
    bool max_norm_given = false;  // flag beats the basis file
    unsigned workers = 1;
    std::uint64_t search_cap = 256;
    std::string output;
    bool cross_check = false;
    int verify_extra = 50;
};

/// A command-line value that failed to parse; maps to exit 64.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational parse_fraction(const std::string& name, const std::string& text) {
    try {
        return Rational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError("argument " + name + ": " + e.what());
    }
}

std::string digits_of(const BigReal& x, int digits) { return x.to_string(digits); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

/// Renders a flat record as text lines, a one-row CSV or JSON.
class Writer {
public:
    explicit Writer(const RunConfig& config) : config_(config) {}

    void emit(const Json& record, const std::vector<std::string>& text_order = {}) {
        std::ostringstream out;
        if (config_.format == "json") {
            out << record.dump(2) << "\n";
        } else if (config_.format == "csv") {
            std::vector<std::string> keys, values;
            for (const auto& [k, v] : record.items()) {
                if (k == "schema")
                    continue;
                keys.push_back(k);
                values.push_back(csv_escape(v.is_string() ? v.get<std::string>() : v.dump()));
            }
            out << join(keys) << "\n" << join(values) << "\n";
        } else {
            const auto order = text_order.empty() ? keys_of(record) : text_order;
            for (const auto& k : order) {
                if (!record.contains(k))
                    continue;
                const auto& v = record[k];
                out << k << std::string(k.size() < 20 ? 20 - k.size() : 1, ' ')
                    << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
        }
        write(out.str());
    }

    void emit_table(const Json& header, const std::vector<std::string>& columns, const Json& rows) {
        std::ostringstream out;
        if (config_.format == "json") {
            Json doc = header;
            doc["rows"] = rows;
            out << doc.dump(2) << "\n";
        } else {
            if (config_.format == "text")
                for (const auto& [k, v] : header.items())
                    if (k != "schema")
                        out << "# " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            out << join(columns) << "\n";
            for (const auto& row : rows) {
                std::vector<std::string> cells;
                for (const auto& c : columns) {
                    const auto& v = row[c];
                    cells.push_back(csv_escape(v.is_string() ? v.get<std::string>() : v.dump()));
                }
                out << join(cells) << "\n";
            }
        }
        write(out.str());
    }

private:
    static std::string join(const std::vector<std::string>& xs) {
        std::string out;
        for (std::size_t i = 0; i < xs.size(); ++i)
            out += (i ? "," : "") + xs[i];
        return out;
    }
    static std::vector<std::string> keys_of(const Json& j) {
        std::vector<std::string> keys;
        for (const auto& [k, v] : j.items())
            if (k != "schema")
                keys.push_back(k);
        return keys;
    }
    void write(const std::string& text) {
        if (config_.output.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream file(config_.output, std::ios::app);
        if (!file)
            throw std::ios_base::failure("cannot write " + config_.output);
        file << text;
    }

    const RunConfig& config_;
};

Json profile_json(const hyperlog::HodgeProfile& profile) {
    Json out = Json::array();
    for (const auto& e : profile.entries)
        out.push_back(Json{{"s", e.s}, {"p", e.p}});
    return out;
}

std::string profile_text(const hyperlog::HodgeProfile& profile) {
    std::string out;
    for (const auto& e : profile.entries)
        out += (out.empty() ? "" : " ") + std::to_string(e.s) + ":" + std::to_string(e.p);
    return out;
}

int cmd_check(const RunConfig& config, const std::vector<std::string>& args) {
    Writer writer(config);
    const Rational a = parse_fraction("a", args[0]);
    const Rational b = parse_fraction("b", args[1]);
    const Rational q = parse_fraction("q", args[2]);
    Json record{{"schema", 1}, {"command", "check"},
                {"a", a.to_string()}, {"b", b.to_string()}, {"q", q.to_string()}};
    try {
        const ParameterTriple t(a, b, q);
        const auto report = hyperlog::check_log_type(t);
        record["valid"] = true;
        record["modulus"] = report.modulus;
        record["watson_family"] = hyperlog::is_watson_family(t);
        if (config.format == "json")
            record["profile"] = profile_json(report.profile);
        else
            record["profile"] = profile_text(report.profile);
        record["is_log_type"] = report.is_log_type;
        record["first_failure"] = report.first_failure ? Json(*report.first_failure) : Json(nullptr);
        writer.emit(record);
        return report.is_log_type ? kOk : kNegative;
    } catch (const hyperlog::InvalidTriple& e) {
        record["valid"] = false;
        record["violated"] = e.hypothesis();
        record["message"] = e.what();
        writer.emit(record);
        return kInvalidTriple;
    }
}

int cmd_hodge(const RunConfig& config, const std::vector<std::string>& args) {
    const ParameterTriple t(parse_fraction("a", args[0]), parse_fraction("b", args[1]), parse_fraction("q", args[2]));
    const auto profile = hyperlog::hodge_profile(t);
    Json rows = Json::array();
    for (const auto& e : profile.entries) {
        const Rational s(mpz_class(static_cast<unsigned long>(e.s)));
        rows.push_back(Json{{"s", e.s},
                            {"frac_sq", hyperlog::frac(s * t.q()).to_string()},
                            {"frac_s(a-q)", hyperlog::frac(s * (t.a() - t.q())).to_string()},
                            {"frac_s(b-q)", hyperlog::frac(s * (t.b() - t.q())).to_string()},
                            {"frac_s(q-a-b)", hyperlog::frac(s * (t.q() - t.a() - t.b())).to_string()},
                            {"p", e.p}});
    }
    Json header{{"schema", 1}, {"command", "hodge"}, {"triple", t.to_string()}, {"modulus", profile.modulus}};
    Writer(config).emit_table(header, {"s", "frac_sq", "frac_s(a-q)", "frac_s(b-q)", "frac_s(q-a-b)", "p"}, rows);
    return kOk;
}

int cmd_search(const RunConfig& config, std::uint64_t n) {
    hyperlog::SearchOptions options;
    options.exact_denominator = config.exact_denominator;
    options.workers = config.workers;
    options.capacity = config.search_cap;
    const auto reports = hyperlog::search_log_type(n, options);
    const auto orbits = hyperlog::orbit_classes(reports, n);

    std::map<ParameterTriple, std::size_t> orbit_of;
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (const auto& m : orbits[i].members)
            orbit_of.emplace(m, i + 1);

    Json rows = Json::array();
    for (const auto& r : reports)
        rows.push_back(Json{{"N", n},
                            {"a", r.triple.a().to_string()},
                            {"b", r.triple.b().to_string()},
                            {"q", r.triple.q().to_string()},
                            {"orbit", orbit_of.at(r.triple)},
                            {"watson", hyperlog::is_watson_family(r.triple)}});
    Json header{{"schema", 1},
                {"command", "search"},
                {"N", n},
                {"exact_denominator", config.exact_denominator},
                {"count", reports.size()},
                {"orbits", orbits.size()}};
    Writer(config).emit_table(header, {"N", "a", "b", "q", "orbit", "watson"}, rows);
    return kOk;
}

int cmd_eval(const RunConfig& config, const std::vector<std::string>& args) {
    const Precision p{config.precision};
    const ParameterTriple t(parse_fraction("a", args[0]), parse_fraction("b", args[1]), parse_fraction("q", args[2]));
    const auto backend = hyperlog::parse_backend(config.backend);
    const auto v = hyperlog::eval_V(t, p, backend);
    Json record{{"schema", 1},
                {"command", "eval"},
                {"triple", t.to_string()},
                {"precision", p.digits},
                {"backend", std::string(hyperlog::to_string(backend))},
                {"value", digits_of(v.value.value, p.digits)},
                {"error_estimate", v.value.error_estimate.to_string(3)},
                {"backend_agreement", v.backend_agreement ? Json(v.backend_agreement->to_string(3)) : Json(nullptr)},
                {"work", v.value.work}};
    Writer(config).emit(record);
    return kOk;
}

int cmd_watson(const RunConfig& config, const std::vector<std::string>& args) {
    const Precision p{config.precision};
    const Rational a = parse_fraction("a", args[0]);
    const Rational b = parse_fraction("b", args[1]);
    const Rational q = hyperlog::watson_q(a, b);
    const auto closed = hyperlog::eval_watson(a, b, p);
    Json record{{"schema", 1},
                {"command", "watson"},
                {"a", a.to_string()},
                {"b", b.to_string()},
                {"q", q.to_string()},
                {"precision", p.digits},
                {"closed_form", digits_of(closed.value, p.digits)}};
    if (config.cross_check) {
        const ParameterTriple t(a, b, q);
        const auto v = hyperlog::eval_V(t, p, hyperlog::parse_backend(config.backend));
        record["numeric"] = digits_of(v.value.value, p.digits);
        record["difference"] = (closed.value - v.value.value).to_string(3);
    }
    Writer(config).emit(record);
    return kOk;
}

Json identity_record(const char* command, const hyperlog::IdentityCheck& c, int digits) {
    return Json{{"schema", 1},
                {"command", command},
                {"precision", digits},
                {"lhs", digits_of(c.lhs, digits)},
                {"rhs", digits_of(c.rhs, digits)},
                {"difference", c.difference.to_string(3)}};
}

int cmd_dixon(const RunConfig& config, const std::vector<std::string>& args) {
    const Precision p{config.precision};
    const ParameterTriple t(parse_fraction("a", args[0]), parse_fraction("b", args[1]), parse_fraction("q", args[2]));
    const auto check = hyperlog::eval_dixon(t, p, hyperlog::parse_backend(config.backend));
    Json record = identity_record("dixon", check, p.digits);
    record["triple"] = t.to_string();
    Writer(config).emit(record);
    return kOk;
}

int cmd_intro(const RunConfig& config) {
    const Precision p{config.precision};
    const auto check = hyperlog::eval_intro_identity(p);
    Json record = identity_record("intro", check, p.digits);
    record["log_argument_positive"] = hyperlog::intro::log_denominator(p).sign() > 0;
    Writer(config).emit(record);
    return kOk;
}

int cmd_pslq(const RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::ios_base::failure("cannot open " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
    if (!doc.contains("basis") || !doc["basis"].is_array())
        throw UsageError(path + ": expected an array field 'basis'");
    std::vector<std::string> labels;
    for (const auto& item : doc["basis"])
        labels.push_back(item.get<std::string>());
    const Precision p{doc.value("precision", config.precision)};
    const double max_norm = config.max_norm_given ? config.max_norm : doc.value("max_norm", config.max_norm);
    const auto basis = hyperlog::make_basis(std::move(labels), p);
    const auto report = hyperlog::find_relation(basis, max_norm, config.verify_extra);

    Json record = hyperlog::to_json(report);
    if (config.format == "json") {
        Writer(config).emit(record);
    } else {
        Json flat = record;
        flat["labels"] = record["labels"].dump();
        flat["coefficients"] = record["coefficients"].dump();
        Writer(config).emit(flat);
    }
    switch (report.outcome.status) {
        case hyperlog::PslqStatus::found: return report.verified ? kOk : kUnverifiedRelation;
        case hyperlog::PslqStatus::excluded: return kNegative;
        default: return kPrecisionExhausted;
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig config;
    CLI::App app{"Log-type criterion and high-precision evaluation of B(a,b) 3F2(a,b,q; a+b,q+1; 1)", "hyperlog"};
    app.set_config("--config", "", "Read options from a key=value file");
    app.require_subcommand(1);

    app.add_option("--precision", config.precision, "Decimal digits (>= 20)")
        ->envname("HYPERLOG_PRECISION")
        ->check(CLI::Range(20, 100000));
    app.add_option("--backend", config.backend, "Evaluation backend")
        ->check(CLI::IsMember({"both", "series", "quadrature"}));
    app.add_option("--format", config.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_flag("--exact-denominator", config.exact_denominator, "search: lcm of denominators exactly N");
    auto* max_norm = app.add_option("--max-norm", config.max_norm, "pslq: largest coefficient searched")
                         ->check(CLI::PositiveNumber);
    app.add_option("--workers", config.workers, "search: worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--search-cap", config.search_cap, "search: largest N accepted");
    app.add_option("--output", config.output, "Append output to FILE instead of stdout");

    std::vector<std::string> triple_args, pair_args;
    std::uint64_t search_n = 0;
    std::string pslq_file;

    auto* check = app.add_subcommand("check", "Decide the log-type criterion for (a,b,q)")->fallthrough();
    check->add_option("abq", triple_args, "a b q")->expected(3)->required();
    auto* hodge = app.add_subcommand("hodge", "Print the Hodge profile p_s of (a,b,q)")->fallthrough();
    hodge->add_option("abq", triple_args, "a b q")->expected(3)->required();
    auto* search = app.add_subcommand("search", "List log-type triples with denominators dividing N")->fallthrough();
    search->add_option("N", search_n)->required();
    auto* eval = app.add_subcommand("eval", "Evaluate V(a,b,q) = B(a,b) 3F2(a,b,q; a+b,q+1; 1)")->fallthrough();
    eval->add_option("abq", triple_args, "a b q")->expected(3)->required();
    auto* watson = app.add_subcommand("watson", "Watson closed form at q = (a+b-1)/2")->fallthrough();
    watson->add_option("ab", pair_args, "a b")->expected(2)->required();
    watson->add_flag("--cross-check", config.cross_check, "Compare with a numeric evaluation of V");
    auto* dixon = app.add_subcommand("dixon", "Both sides of the Dixon transform")->fallthrough();
    dixon->add_option("abq", triple_args, "a b q")->expected(3)->required();
    auto* intro = app.add_subcommand("intro", "Check the (1/6, 5/6, 1/4) log/arccos identity")->fallthrough();
    auto* pslq = app.add_subcommand("pslq", "Find an integer relation among a JSON basis")->fallthrough();
    pslq->add_option("file", pslq_file)->required();
    pslq->add_option("--verify-extra", config.verify_extra, "Extra digits for verification")->check(CLI::Range(20, 10000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kUsage;
    }

    config.max_norm_given = max_norm->count() > 0;
    try {
        if (*check) return cmd_check(config, triple_args);
        if (*hodge) return cmd_hodge(config, triple_args);
        if (*search) return cmd_search(config, search_n);
        if (*eval) return cmd_eval(config, triple_args);
        if (*watson) return cmd_watson(config, pair_args);
        if (*dixon) return cmd_dixon(config, triple_args);
        if (*intro) return cmd_intro(config);
        if (*pslq) return cmd_pslq(config, pslq_file);
    } catch (const UsageError& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kUsage;
    } catch (const hyperlog::InvalidTriple& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kInvalidTriple;
    } catch (const hyperlog::CapacityError& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kCapacity;
    } catch (const hyperlog::DomainError& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kDomainError;
    } catch (const hyperlog::ExpressionError& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kUsage;
    } catch (const hyperlog::BackendDisagreement& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kNumericFailure;
    } catch (const hyperlog::TailModelError& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kNumericFailure;
    } catch (const hyperlog::QuadratureError& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kNumericFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "hyperlog: " << e.what() << "\n";
        return kNoInput;
    } catch (const std::exception& e) {
        std::cerr << "hyperlog: internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
