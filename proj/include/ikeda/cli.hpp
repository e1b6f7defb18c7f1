/**
 * @file cli.hpp
 * @brief Command-line front end: eigen, verify, qbinom, forms, selftest.
 *
 * Exit codes: 0 all checks passed, 1 a mathematical check failed,
 * 2 usage or parameter error.
 */
#ifndef IKEDA_CLI_HPP
#define IKEDA_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ikeda/error.hpp"
#include "ikeda/exactnum.hpp"
#include "ikeda/ikeda.hpp"
#include "ikeda/modforms.hpp"
#include "ikeda/qseries.hpp"
#include "ikeda/selftest.hpp"

namespace ikeda::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

enum class Format { csv, json };

struct RunConfig {
    std::string command;
    long n = 0;
    long k = 0;
    long m = 0;
    int weight = 0;
    unsigned long pmax = 100;
    std::optional<std::string> eigenform_path;
    std::optional<std::string> q0;
    Format format = Format::csv;
    std::optional<std::string> output_path;
    int decimal_digits = 50;
};

inline const std::vector<std::string>& csv_columns()
{
    static const std::vector<std::string> cols{"p",           "a_p",         "lambda",        "lower_exact",
                                               "upper_exact", "lower_decimal", "upper_decimal", "positive",
                                               "within_bounds", "routes_agree"};
    return cols;
}

/// One output record as column -> text, in csv_columns() order.
using Record = std::map<std::string, std::string>;

inline Record to_record(const lift::PrimeOutcome& o, int digits)
{
    Record r;
    for (const auto& c : csv_columns()) r[c] = "";
    r["p"] = o.p.get_str();
    r["positive"] = r["within_bounds"] = r["routes_agree"] = "false";
    if (!o.report) return r;
    const auto& rep = *o.report;
    r["a_p"] = rep.a_p.get_str();
    r["lambda"] = rep.lambda.get_str();
    r["lower_exact"] = rep.lower.to_string();
    r["upper_exact"] = rep.upper.to_string();
    r["lower_decimal"] = rep.lower.to_decimal(digits);
    r["upper_decimal"] = rep.upper.to_decimal(digits);
    r["positive"] = rep.positive ? "true" : "false";
    r["within_bounds"] = rep.within_bounds ? "true" : "false";
    r["routes_agree"] = rep.routes_agree ? "true" : "false";
    return r;
}

inline void write_csv(std::ostream& os, const std::vector<Record>& records)
{
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : records) {
        for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << r.at(cols[i]);
        os << '\n';
    }
}

/// Integers and exact values are strings so no precision is lost.
inline void write_json(std::ostream& os, const lift::IkedaParams& prm, const std::vector<Record>& records)
{
    nlohmann::ordered_json doc;
    doc["n"] = prm.n();
    doc["k"] = prm.k();
    doc["eigenform_weight"] = prm.eigenform_weight();
    auto& arr = doc["records"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        for (const auto& c : csv_columns()) {
            const std::string& v = r.at(c);
            if (v == "true" || v == "false")
                j[c] = (v == "true");
            else
                j[c] = v;
        }
        arr.push_back(std::move(j));
    }
    os << doc.dump(2) << '\n';
}

inline std::vector<Record> parse_csv(std::istream& in)
{
    std::vector<Record> out;
    std::string line;
    std::vector<std::string> header;
    auto split = [](const std::string& s) {
        std::vector<std::string> f;
        std::stringstream ss(s);
        std::string x;
        while (std::getline(ss, x, ',')) f.push_back(x);
        if (!s.empty() && s.back() == ',') f.emplace_back();
        return f;
    };
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split(line);
        if (header.empty()) {
            header = std::move(f);
            continue;
        }
        if (f.size() != header.size()) throw DomainError("CSV row width mismatch: '" + line + "'");
        Record r;
        for (std::size_t i = 0; i < f.size(); ++i) r[header[i]] = f[i];
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<Record> parse_json(std::istream& in)
{
    const auto doc = nlohmann::json::parse(in);
    std::vector<Record> out;
    for (const auto& j : doc.at("records")) {
        Record r;
        for (auto it = j.begin(); it != j.end(); ++it)
            r[it.key()] = it->is_boolean() ? (it->get<bool>() ? "true" : "false") : it->get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

namespace detail {

/// Writes to --out when given, otherwise to out.
template <class F>
int with_output(const RunConfig& cfg, std::ostream& out, std::ostream& err, F&& emit)
{
    if (!cfg.output_path) {
        emit(out);
        return kOk;
    }
    std::ofstream file(*cfg.output_path);
    if (!file) {
        err << "error: cannot write '" << *cfg.output_path << "'\n";
        return kUsage;
    }
    emit(file);
    return kOk;
}

struct Prepared {
    lift::IkedaParams params;
    modforms::FourierSeries form;
};

/// Validates (n, k) and obtains the eigenform; returns an exit code on failure.
inline std::variant<Prepared, int> prepare(const RunConfig& cfg, std::ostream& err)
{
    if (cfg.pmax < 2) {
        err << "error: --pmax must be at least 2\n";
        return kUsage;
    }
    std::optional<lift::IkedaParams> prm;
    try {
        prm = lift::IkedaParams::create(cfg.n, cfg.k);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    const int w = prm->eigenform_weight();
    try {
        if (cfg.eigenform_path) {
            auto f = modforms::load_eigenform(*cfg.eigenform_path, w);
            if (f.truncation() < cfg.pmax) {
                err << "error: eigenform table reaches m = " << f.truncation() << " < pmax = " << cfg.pmax << '\n';
                return kUsage;
            }
            return Prepared{*prm, std::move(f)};
        }
        if (!modforms::has_builtin_eigenform(w)) {
            err << "error: no built-in eigenform of weight 2k - n = " << w << "; pass --eigenform FILE\n";
            return kUsage;
        }
        return Prepared{*prm, modforms::eigenform(w, cfg.pmax)};
    } catch (const ValidationError& e) {
        err << "error: eigenform validation failed at index " << e.index() << ": " << e.what() << '\n';
        return kCheckFailed;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

inline void report_errors(const std::vector<lift::PrimeOutcome>& outcomes, std::ostream& err)
{
    for (const auto& o : outcomes)
        if (!o.error.empty()) err << "p = " << o.p.get_str() << ": " << o.error << '\n';
}

}  // namespace detail

inline int run_eigen(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto prepared = detail::prepare(cfg, err);
    if (auto* code = std::get_if<int>(&prepared)) return *code;
    const auto& [prm, form] = std::get<detail::Prepared>(prepared);

    const auto outcomes = lift::sweep(prm, form, cfg.pmax);
    std::vector<Record> records;
    for (const auto& o : outcomes) records.push_back(to_record(o, cfg.decimal_digits));
    detail::report_errors(outcomes, err);

    const int io = detail::with_output(cfg, out, err, [&](std::ostream& os) {
        if (cfg.format == Format::json)
            write_json(os, prm, records);
        else
            write_csv(os, records);
    });
    if (io != kOk) return io;
    const bool all_ok = std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.ok(); });
    return all_ok ? kOk : kCheckFailed;
}

inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    auto prepared = detail::prepare(cfg, err);
    if (auto* code = std::get_if<int>(&prepared)) return *code;
    const auto& [prm, form] = std::get<detail::Prepared>(prepared);

    const auto outcomes = lift::sweep(prm, form, cfg.pmax);
    std::size_t agree = 0, positive = 0, bounded = 0;
    const lift::PrimeOutcome* first_bad = nullptr;
    for (const auto& o : outcomes) {
        if (o.report) {
            agree += o.report->routes_agree;
            positive += o.report->positive;
            bounded += o.report->within_bounds;
        }
        if (!o.ok() && !first_bad) first_bad = &o;
    }
    const std::size_t total = outcomes.size();
    out << "n = " << prm.n() << ", k = " << prm.k() << ", eigenform weight " << prm.eigenform_weight()
        << ", primes p <= " << cfg.pmax << '\n';
    out << std::left << std::setw(18) << "check" << std::right << std::setw(8) << "passed" << std::setw(8) << "failed"
        << '\n';
    auto row = [&](const char* name, std::size_t ok) {
        out << std::left << std::setw(18) << name << std::right << std::setw(8) << ok << std::setw(8) << total - ok
            << '\n';
    };
    row("routes_agree", agree);
    row("positive", positive);
    row("within_bounds", bounded);
    if (first_bad) {
        out << "first failure at p = " << first_bad->p.get_str();
        if (!first_bad->error.empty()) out << ": " << first_bad->error;
        out << '\n';
    }
    detail::report_errors(outcomes, err);

    if (cfg.output_path) {
        std::vector<Record> records;
        for (const auto& o : outcomes) records.push_back(to_record(o, cfg.decimal_digits));
        const int io = detail::with_output(cfg, out, err, [&](std::ostream& os) {
            if (cfg.format == Format::json)
                write_json(os, prm, records);
            else
                write_csv(os, records);
        });
        if (io != kOk) return io;
    }
    return first_bad ? kCheckFailed : kOk;
}

inline int run_qbinom(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.n < 0 || cfg.m < 0 || cfg.m > cfg.n) {
        err << "error: need 0 <= m <= n, got n = " << cfg.n << ", m = " << cfg.m << '\n';
        return kUsage;
    }
    const auto b = qseries::q_binomial(cfg.n, cfg.m);
    return detail::with_output(cfg, out, err, [&](std::ostream& os) {
        if (cfg.q0)
            os << poly::eval_poly(b, num::Integer(*cfg.q0)).get_str() << '\n';
        else
            os << poly::to_string(b, 'q') << '\n';
    });
}

inline int run_forms(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    if (cfg.pmax < 1) {
        err << "error: --pmax must be positive\n";
        return kUsage;
    }
    std::optional<modforms::FourierSeries> f;
    try {
        if (cfg.eigenform_path)
            f = modforms::load_eigenform(*cfg.eigenform_path, cfg.weight);
        else if (modforms::has_builtin_eigenform(cfg.weight))
            f = modforms::eigenform(cfg.weight, cfg.pmax);
        else {
            err << "error: no built-in eigenform of weight " << cfg.weight
                << " (supported: 12, 16, 18, 20, 22, 26); pass --eigenform FILE\n";
            return kUsage;
        }
    } catch (const ValidationError& e) {
        err << "error: eigenform validation failed at index " << e.index() << ": " << e.what() << '\n';
        return kCheckFailed;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    const std::size_t upto = std::min<std::size_t>(cfg.pmax, f->truncation());
    return detail::with_output(cfg, out, err, [&](std::ostream& os) {
        os << "# weight " << f->weight() << '\n';
        for (std::size_t m = 1; m <= upto; ++m) os << m << ' ' << (*f)[m].get_str() << '\n';
    });
}

inline int run_selftest(std::ostream& out)
{
    const auto results = selftest::run_all(out);
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.failure.empty(); });
    out << results.size() - static_cast<std::size_t>(failed) << " passed, " << failed << " failed\n";
    return failed == 0 ? kOk : kCheckFailed;
}

/// Entry point shared by the executable and the tests; args exclude argv[0].
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hecke eigenvalues of Ikeda lifts at primes, verified in exact arithmetic", "ikeda"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string format = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "degree n of the lift (even)")->required();
        sub->add_option("--k", cfg.k, "weight k of the lift (even, k > n + 1)")->required();
        sub->add_option("--pmax", cfg.pmax, "largest prime to process")->capture_default_str();
        sub->add_option("--eigenform", cfg.eigenform_path, "coefficient table 'm a(m)' for weight 2k - n");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.output_path, "write records to this file");
        sub->add_option("--digits", cfg.decimal_digits, "significant digits of decimal renderings")
            ->check(CLI::Range(5, 1000));
    };

    auto* eigen = app.add_subcommand("eigen", "emit lambda_F(p) with exact bounds for every prime p <= pmax");
    add_common(eigen);
    auto* verify = app.add_subcommand("verify", "check route agreement, positivity and bounds; print a summary");
    add_common(verify);

    auto* qbinom = app.add_subcommand("qbinom", "Gaussian binomial coefficient [n choose m]_q");
    qbinom->add_option("--n", cfg.n)->required();
    qbinom->add_option("--m", cfg.m)->required();
    qbinom->add_option("--q", cfg.q0, "evaluate at this integer");
    qbinom->add_option("--out", cfg.output_path);

    auto* forms = app.add_subcommand("forms", "print eigenform coefficients a(1..pmax)");
    forms->add_option("--weight", cfg.weight)->required();
    forms->add_option("--pmax", cfg.pmax)->capture_default_str();
    forms->add_option("--eigenform", cfg.eigenform_path);
    forms->add_option("--out", cfg.output_path);

    auto* self = app.add_subcommand("selftest", "run the invariant suite of every module");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }
    cfg.format = (format == "json") ? Format::json : Format::csv;

    if (cfg.q0) {
        try {
            (void)num::Integer(*cfg.q0);
        } catch (const std::invalid_argument&) {
            err << "error: --q must be an integer\n";
            return kUsage;
        }
    }

    try {
        if (eigen->parsed()) return run_eigen(cfg, out, err);
        if (verify->parsed()) return run_verify(cfg, out, err);
        if (qbinom->parsed()) return run_qbinom(cfg, out, err);
        if (forms->parsed()) return run_forms(cfg, out, err);
        if (self->parsed()) return run_selftest(out);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kCheckFailed;
    } catch (const ValidationError& e) {
        err << "check failed at index " << e.index() << ": " << e.what() << '\n';
        return kCheckFailed;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace ikeda::cli

#endif  // IKEDA_CLI_HPP
