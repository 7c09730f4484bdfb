#ifndef QDIV_CLI_HPP
#define QDIV_CLI_HPP

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qdiv/catalog.hpp>
#include <qdiv/qobjects.hpp>
#include <qdiv/report.hpp>

namespace qdiv::cli
{

enum ExitCode : int { ok = 0, failed = 1, invalid = 2, internal = 3 };

struct DivisorRow {
    std::int64_t n = 0;
    Rational lambert;     // coefficient of q^n in sum q^k/(1-q^k)
    Rational odd_lambert; // coefficient of q^n in sum 2q^k/(1-q^(2k))
    std::int64_t d = 0;
    std::int64_t odd_d = 0;

    bool matches() const
    {
        return lambert == d && odd_lambert == 2 * odd_d;
    }
};

inline std::vector<DivisorRow> divisor_rows(std::int64_t max)
{
    QLaurentSeries plain = sum_terms(1, max, [&](std::int64_t k) {
        return lambert_term(QMonomial::q_power(k), max);
    });
    QLaurentSeries odd = sum_terms(1, max, [&](std::int64_t k) {
        return div_binomial(QLaurentSeries::from_monomial(QMonomial{Rational{2}, k}, max), Rational{1}, 2 * k);
    });
    std::vector<DivisorRow> rows;
    for (std::int64_t n = 1; n <= max; ++n) {
        rows.push_back(DivisorRow{n, plain.coeff(n), odd.coeff(n), divisor_count(n), odd_divisor_count(n)});
    }
    return rows;
}

inline std::string param_signature(const IdentityDescriptor &d)
{
    std::string out = "(";
    for (std::size_t i = 0; i < d.params.size(); ++i) {
        const ParamSpec &p = d.params[i];
        out += i ? ", " : "";
        out += p.name;
        switch (p.kind) {
        case ParamKind::integer:
            out += ">=" + std::to_string(p.min);
            break;
        case ParamKind::monomial:
            out += ":monomial";
            break;
        case ParamKind::rational:
            out += ":rational";
            break;
        case ParamKind::rational_list:
            out += ":list";
            break;
        }
    }
    return out + ")";
}

inline nlohmann::json descriptor_json(const IdentityDescriptor &d)
{
    static const char *kinds[] = {"integer", "monomial", "rational", "rational_list"};
    nlohmann::json params = nlohmann::json::array();
    for (const auto &p : d.params) {
        nlohmann::json j{{"name", p.name}, {"kind", kinds[static_cast<int>(p.kind)]}};
        if (p.kind == ParamKind::integer) {
            j["min"] = p.min;
        }
        params.push_back(j);
    }
    return {{"id", d.id},
            {"group", d.group == Group::series ? "series" : "rational"},
            {"params", params},
            {"constraints", d.constraints},
            {"anchor", d.anchor},
            {"infinite", d.infinite},
            {"valuation_note", d.valuation_note}};
}

inline int cmd_catalog(const std::string &format, std::ostream &out)
{
    auto series = list_identities();
    auto rational = list_rational_checks();
    if (format == "json") {
        nlohmann::json s = nlohmann::json::array(), r = nlohmann::json::array();
        for (const auto &d : series) {
            s.push_back(descriptor_json(d));
        }
        for (const auto &d : rational) {
            r.push_back(descriptor_json(d));
        }
        out << nlohmann::json{{"series", s}, {"rational", r}}.dump(2) << "\n";
        return ok;
    }
    for (const auto &d : series) {
        out << d.id << " " << param_signature(d) << " " << d.anchor << "\n";
    }
    out << "rational\n";
    for (const auto &d : rational) {
        out << "  " << d.id << " " << param_signature(d) << " " << d.anchor << "\n";
    }
    return ok;
}

// Raw flag values as typed on the command line.
struct CheckArgs {
    std::string id;
    std::optional<std::int64_t> n, m, l;
    std::optional<std::string> z, v, x, y, a;
    std::int64_t order = 30;
    std::string format = "text";
};

inline std::vector<Rational> parse_list(std::string text)
{
    if (!text.empty() && text.front() == '(' && text.back() == ')') {
        text = text.substr(1, text.size() - 2);
    }
    std::vector<Rational> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        out.push_back(parse_rational(item));
    }
    return out;
}

// Throws std::invalid_argument on malformed literals.
inline ParamSet to_params(const CheckArgs &a, Group group)
{
    ParamSet p;
    p.n = a.n;
    p.m = a.m;
    p.l = a.l;
    auto mono = [](const std::optional<std::string> &s) {
        return s ? std::optional<QMonomial>{parse_monomial(*s)} : std::nullopt;
    };
    p.z = mono(a.z);
    p.v = mono(a.v);
    p.y = mono(a.y);
    if (a.x) {
        if (group == Group::rational) {
            p.xr = parse_rational(*a.x);
        } else {
            p.x = parse_monomial(*a.x);
        }
    }
    if (a.a) {
        p.a = parse_list(*a.a);
    }
    return p;
}

inline void print_text(const VerificationReport &r, std::ostream &out)
{
    out << r.identity << " [" << r.params << "] order " << r.order << ": " << to_string(r.status);
    if (r.first_mismatch) {
        out << " at q^" << r.first_mismatch->exponent << " (lhs " << r.first_mismatch->lhs << ", rhs "
            << r.first_mismatch->rhs << ")";
    }
    if (r.skip_reason) {
        out << " (" << *r.skip_reason << ")";
    }
    if (r.diagnostic) {
        out << " (" << *r.diagnostic << ")";
    }
    if (r.status == Status::pass) {
        out << (find_identity(r.identity).group == Group::series
                    ? " (coefficients compared through q^" + std::to_string(r.order) + ")"
                    : std::string{" (exact)"});
    }
    out << "\n";
}

// pass -> 0, mismatch -> 1, skipped -> 2, evaluation error -> 3.
inline int exit_code(const VerificationReport &r)
{
    if (r.status == Status::pass) {
        return ok;
    }
    if (r.status == Status::skipped) {
        return invalid;
    }
    return r.diagnostic ? internal : failed;
}

inline int cmd_check(const CheckArgs &a, std::ostream &out, std::ostream &err)
{
    VerificationReport r;
    try {
        const IdentityDescriptor &d = find_identity(a.id);
        ParamSet p = to_params(a, d.group);
        r = verify(a.id, p, a.order);
    } catch (const unknown_identity &e) {
        err << e.what() << "\n";
        return invalid;
    } catch (const std::invalid_argument &e) {
        err << e.what() << "\n";
        return invalid;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
    if (a.format == "json") {
        out << row_to_json(r, false).dump(2) << "\n";
    } else {
        print_text(r, out);
    }
    return exit_code(r);
}

struct SweepArgs {
    std::int64_t max_n = 4;
    std::int64_t order = 30;
    unsigned jobs = 0;
    int seed = 0;
    bool timings = false;
    std::string out_path;
};

inline int cmd_sweep(const SweepArgs &a, std::ostream &out, std::ostream &err)
{
    if (a.max_n < 1) {
        err << "--max-n must be >= 1\n";
        return invalid;
    }
    unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
    ReportDocument doc;
    try {
        doc = sweep(a.max_n, a.order, jobs, a.seed, a.timings);
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
    std::string text = render(doc);
    if (a.out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(a.out_path, std::ios::binary);
        if (!(f << text) || !f.flush()) {
            err << "cannot write " << a.out_path << "\n";
            return internal;
        }
        out << "pass=" << doc.totals.pass << " fail=" << doc.totals.fail << " skipped=" << doc.totals.skipped
            << " rows=" << doc.rows.size() << "\n";
    }
    return doc.totals.fail == 0 ? ok : failed;
}

inline int cmd_divisor(std::int64_t max, std::ostream &out, std::ostream &err)
{
    if (max < 1) {
        err << "--max must be >= 1\n";
        return invalid;
    }
    for (const auto &r : divisor_rows(max)) {
        out << "n=" << r.n << " d=" << r.d << " odd-d=" << r.odd_d << " coeff=" << to_string(r.lambert)
            << " odd-coeff=" << to_string(r.odd_lambert) << "\n";
        if (!r.matches()) {
            out << "mismatch at n=" << r.n << "\n";
            return failed;
        }
    }
    out << "all " << max << " rows match\n";
    return ok;
}

// Entry point shared by the executable and the tests.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact verifier for q-series divisor identities", "qdivcheck"};
    app.require_subcommand(1);

    std::string catalog_format = "text";
    auto *catalog = app.add_subcommand("catalog", "List the identity catalog");
    catalog->add_option("--format", catalog_format)->check(CLI::IsMember({"text", "json"}));

    CheckArgs ca;
    auto *check = app.add_subcommand("check", "Verify one identity at one parameter point");
    check->add_option("--id", ca.id)->required();
    check->add_option("--n", ca.n);
    check->add_option("--m", ca.m);
    check->add_option("--l", ca.l);
    check->add_option("--z", ca.z, "monomial C or C*q^S");
    check->add_option("--v", ca.v);
    check->add_option("--x", ca.x, "monomial, or a rational for the rational group");
    check->add_option("--y", ca.y);
    check->add_option("--a", ca.a, "comma separated rationals");
    check->add_option("--order", ca.order)->capture_default_str();
    check->add_option("--format", ca.format)->check(CLI::IsMember({"text", "json"}));

    SweepArgs sa;
    auto *sweep_cmd = app.add_subcommand("sweep", "Run the full parameter grid");
    sweep_cmd->add_option("--max-n", sa.max_n)->capture_default_str();
    sweep_cmd->add_option("--order", sa.order)->capture_default_str();
    sweep_cmd->add_option("--jobs", sa.jobs, "worker threads (0: available parallelism)");
    sweep_cmd->add_option("--seed", sa.seed, "selects a fixed substitution-point list");
    sweep_cmd->add_flag("--timings", sa.timings, "record elapsed_ms per row");
    sweep_cmd->add_option("--out", sa.out_path);

    std::int64_t divisor_max = 100;
    auto *divisor = app.add_subcommand("divisor", "Cross-check Lambert coefficients against divisor counts");
    divisor->add_option("--max", divisor_max)->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return invalid;
    }
    if (catalog->parsed()) {
        return cmd_catalog(catalog_format, out);
    }
    if (check->parsed()) {
        return cmd_check(ca, out, err);
    }
    if (sweep_cmd->parsed()) {
        return cmd_sweep(sa, out, err);
    }
    return cmd_divisor(divisor_max, out, err);
}

} // namespace qdiv::cli

#endif
