#ifndef QDIV_CATALOG_HPP
#define QDIV_CATALOG_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <qdiv/errors.hpp>
#include <qdiv/identities.hpp>
#include <qdiv/laurent_series.hpp>
#include <qdiv/limit_identities.hpp>
#include <qdiv/monomial.hpp>
#include <qdiv/rational.hpp>

namespace qdiv
{

enum class ParamKind { integer, monomial, rational, rational_list };

struct ParamSpec {
    std::string name;
    ParamKind kind = ParamKind::integer;
    // Lower bound for integer parameters.
    std::int64_t min = 0;
};

enum class Side { lhs, rhs };

enum class Group { series, rational };

struct IdentityDescriptor {
    std::string id;
    Group group = Group::series;
    std::vector<ParamSpec> params;
    std::string constraints;
    std::string anchor;
    bool infinite = false;
    std::string valuation_note;
};

enum class Status { pass, fail, skipped };

inline const char *to_string(Status s)
{
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::fail:
        return "fail";
    case Status::skipped:
        return "skipped";
    }
    return "?";
}

struct Mismatch {
    std::int64_t exponent = 0;
    std::string lhs;
    std::string rhs;

    friend bool operator==(const Mismatch &, const Mismatch &) = default;
};

// status == fail with no first_mismatch means evaluation raised; the text is
// in diagnostic.
struct VerificationReport {
    std::string identity;
    std::string params;
    std::int64_t order = 0;
    Status status = Status::pass;
    std::optional<Mismatch> first_mismatch;
    std::optional<std::string> skip_reason;
    std::optional<std::string> diagnostic;
    std::int64_t elapsed_ms = 0;

    friend bool operator==(const VerificationReport &, const VerificationReport &) = default;
};

namespace detail
{

using SideFn = QLaurentSeries (*)(const ParamSet &, std::int64_t);
using Validator = std::optional<std::string> (*)(const ParamSet &);
using RationalFn = limits::RationalCheck (*)(const ParamSet &);

struct Entry {
    IdentityDescriptor desc;
    SideFn lhs = nullptr;
    SideFn rhs = nullptr;
    Validator extra = nullptr;
    RationalFn check = nullptr;
};

inline constexpr std::int64_t unbounded = std::numeric_limits<std::int64_t>::max();

// Violation text if 1 - a q^j vanishes for some j in [lo, hi].
inline std::optional<std::string> zero_factor(const QMonomial &a, std::int64_t lo, std::int64_t hi,
                                              const std::string &what)
{
    if (a.c == 1 && -a.s >= lo && -a.s <= hi) {
        return what + " contains the factor 0";
    }
    return std::nullopt;
}

inline std::optional<std::string> needs_growth(const QMonomial &z)
{
    if (z.s < 1) {
        return std::string{"infinite sum requires s >= 1"};
    }
    return std::nullopt;
}

inline std::optional<std::string> first_of(std::initializer_list<std::optional<std::string>> checks)
{
    for (const auto &c : checks) {
        if (c) {
            return c;
        }
    }
    return std::nullopt;
}

inline std::optional<std::string> m_at_most_n(const ParamSet &p)
{
    return *p.m > *p.n ? std::optional<std::string>{"m exceeds n"} : std::nullopt;
}

inline std::optional<std::string> l_at_most_n(const ParamSet &p)
{
    return *p.l > *p.n ? std::optional<std::string>{"l exceeds n"} : std::nullopt;
}

inline std::optional<std::string> v_thm1(const ParamSet &p)
{
    const std::int64_t n = *p.n, m = *p.m, l = *p.l;
    return first_of({l_at_most_n(p), m_at_most_n(p), zero_factor(p.z->shifted(-m), 0, n - l - 1, "1 - z*q^(k-m), 0 <= k < n-l,")});
}

inline std::optional<std::string> v_thm2(const ParamSet &p)
{
    const std::int64_t n = *p.n, m = *p.m;
    return zero_factor(p.z->shifted(-m), 0, m + n - 1, "(z*q^-m;q)_(m+n)");
}

inline std::optional<std::string> v_sym(const ParamSet &p)
{
    const std::int64_t top = std::max(*p.m, *p.n);
    return zero_factor(p.z->shifted(-1), 1, top, "1 - z*q^(k-1), 1 <= k <= max(m,n),");
}

inline std::optional<std::string> v_thm3(const ParamSet &p)
{
    const std::int64_t top = std::max(*p.m, *p.n);
    return first_of({zero_factor(*p.v, 0, top - 1, "(v;q)_max(m,n)"), v_sym(p)});
}

inline std::optional<std::string> v_lagrange(const ParamSet &p)
{
    return first_of({l_at_most_n(p), zero_factor(*p.x, 0, *p.n, "(x;q)_(n+1)")});
}

inline std::optional<std::string> v_cor_ourdiv(const ParamSet &p)
{
    const std::int64_t n = *p.n, m = *p.m;
    return first_of({m_at_most_n(p), zero_factor(p.z->shifted(-m), 0, n - 1, "1 - z*q^(k-m), 0 <= k < n,")});
}

inline std::optional<std::string> v_cor_ourinfty(const ParamSet &p)
{
    const std::int64_t m = *p.m;
    return first_of({needs_growth(*p.z), zero_factor(p.z->shifted(-m), 0, unbounded, "1 - z*q^(k-m), k >= 0,")});
}

inline std::optional<std::string> v_cor_ourinfty2(const ParamSet &p)
{
    return first_of({needs_growth(*p.z), zero_factor(*p.z, 0, unbounded, "1 - z*q^k, k >= 0,")});
}

inline std::optional<std::string> v_cor_our(const ParamSet &p)
{
    const std::int64_t n = *p.n, l = *p.l;
    return first_of({l_at_most_n(p), zero_factor(p.z->shifted(-1), 1, n - l, "1 - z*q^(k-1), 1 <= k <= n-l,")});
}

inline std::optional<std::string> v_cor1(const ParamSet &p)
{
    return zero_factor(p.z->shifted(-1), 1, *p.n, "1 - z*q^(k-1), 1 <= k <= n,");
}

inline std::optional<std::string> v_thm4(const ParamSet &p)
{
    const std::int64_t n = *p.n, m = *p.m;
    return zero_factor(p.z->shifted(-m), 0, n + m - 2, "(z*q^-m;q)_(n+m-1)");
}

inline std::optional<std::string> v_thm2_inf(const ParamSet &p)
{
    const std::int64_t m = *p.m;
    const QMonomial &z = *p.z;
    return first_of({needs_growth(z), zero_factor(z.shifted(-m), 0, m - 1, "(z*q^-m;q)_m"),
                     zero_factor(z.shifted(-m), 1, unbounded, "1 - z*q^(k-i), k >= 1, 1 <= i <= m,")});
}

inline std::optional<std::string> v_thm4_inf(const ParamSet &p)
{
    const std::int64_t m = *p.m;
    const QMonomial &z = *p.z;
    return first_of({needs_growth(z), zero_factor(z.shifted(-m), 0, m - 2, "(z*q^-m;q)_(m-1)"),
                     zero_factor(z.shifted(-m), 1, unbounded, "1 - z*q^(j-m), j >= 1,")});
}

inline std::optional<std::string> v_guo_zeng(const ParamSet &p)
{
    const std::int64_t m = *p.m, n = *p.n;
    const QMonomial xyz = *p.x * *p.y * *p.z;
    return first_of({zero_factor(xyz, 0, m + n - 1, "(xyz;q)_(m+n)"),
                     zero_factor(*p.v, 0, std::max(m, n) - 1, "(v;q)_max(m,n)")});
}

inline std::optional<std::string> v_newsym(const ParamSet &p)
{
    const std::int64_t m = *p.m, n = *p.n;
    return first_of({zero_factor(*p.x, 0, m + n, "(x;q)_(m+n+1)"),
                     zero_factor(*p.v, 0, std::max(m, n) - 1, "(v;q)_max(m,n)")});
}

inline std::optional<std::string> v_zeng_key(const ParamSet &p)
{
    const auto &a = *p.a;
    if (a.empty()) {
        return std::string{"at least one value is required"};
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            return std::string{"values must be nonzero"};
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (a[i] == a[j]) {
                return "value " + to_string(a[i]) + " appears twice";
            }
        }
    }
    return std::nullopt;
}

inline ParamSpec integer(const char *name, std::int64_t min)
{
    return ParamSpec{name, ParamKind::integer, min};
}

inline ParamSpec letter(const char *name)
{
    return ParamSpec{name, ParamKind::monomial, 0};
}

inline std::vector<Entry> build_registry()
{
    namespace f = formulas;
    const char *growth = "term k has valuation at least k*s minus a constant, so s >= 1 makes the sum formal";
    std::vector<Entry> r;
    auto series = [&](const char *id, std::vector<ParamSpec> params, const char *constraints, const char *anchor,
                      SideFn lhs, SideFn rhs, Validator extra = nullptr, bool infinite = false,
                      const char *note = "") {
        r.push_back(Entry{IdentityDescriptor{id, Group::series, std::move(params), constraints, anchor, infinite, note},
                          lhs, rhs, extra, nullptr});
    };
    auto rational = [&](const char *id, std::vector<ParamSpec> params, const char *constraints, const char *anchor,
                        RationalFn check, Validator extra = nullptr) {
        r.push_back(Entry{IdentityDescriptor{id, Group::rational, std::move(params), constraints, anchor, false, ""},
                          nullptr, nullptr, extra, check});
    };

    series("cor001", {integer("m", 0), integer("n", 0)}, "m, n >= 0", "\"Taking the limit as z→0\"",
           f::cor001_lhs, f::z0_harmonic_rhs);
    series("cor002", {integer("m", 0), integer("n", 0)}, "m, n >= 0", "\"Taking the limit as z→0\"",
           f::cor002_lhs, f::z0_harmonic_rhs);
    series("cor1", {integer("n", 0), letter("z")}, "n >= 0; 1 - z*q^(k-1) != 0", "\"Furthermore, letting l=0\"",
           f::cor1_lhs, f::cor1_rhs, v_cor1);
    series("cor_our", {integer("n", 0), integer("l", 0), letter("z")}, "0 <= l <= n; 1 - z*q^(k-1) != 0",
           "\"Letting m=0 in Theorem\"", f::cor_our_lhs, f::cor_our_rhs, v_cor_our);
    series("cor_ourdiv", {integer("n", 0), integer("m", 0), letter("z")}, "0 <= m <= n; 1 - z*q^(k-m) != 0",
           "\"Letting l=0 in Theorem\"", f::cor_ourdiv_lhs, f::cor_ourdiv_rhs, v_cor_ourdiv);
    series("cor_ourinfty", {integer("m", 0), letter("z")}, "m >= 0; z = c*q^s with s >= 1; 1 - z*q^(k-m) != 0",
           "\"Letting n→∞ in\"", f::cor_ourinfty_lhs, f::cor_ourinfty_rhs, v_cor_ourinfty, true, growth);
    series("cor_ourinfty2", {letter("z")}, "z = c*q^s with s >= 1", "\"the above identity\"", f::cor_ourinfty2_lhs,
           f::cor_ourinfty2_rhs, v_cor_ourinfty2, true, growth);
    series("cor_v0", {integer("m", 0), integer("n", 0), letter("z")}, "m, n >= 0; 1 - z*q^(k-1) != 0",
           "\"Letting v→0 or v→∞\"", f::cor_v0_lhs, f::thm3_rhs, v_sym);
    series("cor_vinf", {integer("m", 0), integer("n", 0), letter("z")}, "m, n >= 0; 1 - z*q^(k-1) != 0",
           "\"Letting v→0 or v→∞\"", f::cor_vinf_lhs, f::thm3_rhs, v_sym);
    series("corteel_lovejoy", {}, "none (z = -q)", "\"combinatorial interpretation was given by\"",
           f::corteel_lovejoy_lhs, f::corteel_lovejoy_rhs, nullptr, true,
           "term k has valuation at least k on the left and k on the right");
    series("dilcher", {integer("n", 1), integer("m", 1)}, "n, m >= 1", "\"multiple series generalization of\"",
           f::dilcher_lhs, f::dilcher_rhs);
    series("gen_u81_a", {integer("m", 0)}, "m >= 0", "\"two different generalizations of\"", f::gen_u81_a_lhs,
           f::gen_u81_rhs, nullptr, true, "term k has valuation C(k+1,2)");
    series("gen_u81_b", {integer("m", 0)}, "m >= 0", "\"two different generalizations of\"", f::gen_u81_b_lhs,
           f::gen_u81_rhs, nullptr, true, "term k has valuation C(k+1,2) + m*k");
    series("guo_zeng",
           {integer("m", 0), integer("n", 0), letter("x"), letter("y"), letter("v"), letter("z")},
           "m, n >= 0; (xyz;q)_(m+n) and (v;q)_max(m,n) free of zero factors", "\"the following identity appearing in\"",
           f::guo_zeng_lhs, f::guo_zeng_rhs, v_guo_zeng);
    series("lagrange_lemma", {integer("n", 0), integer("l", 0), letter("x"), letter("z")},
           "0 <= l <= n; (x;q)_(n+1) free of zero factors", "\"Lagrange interpolation formula for\"",
           f::lagrange_lemma_lhs, f::lagrange_lemma_rhs, v_lagrange);
    series("newsym", {integer("m", 0), integer("n", 0), letter("x"), letter("v"), letter("z")},
           "m, n >= 0; y = q/z; (x;q)_(m+n+1) and (v;q)_max(m,n) free of zero factors",
           "\"which can be rewritten as\"", f::newsym_lhs, f::newsym_rhs, v_newsym);
    series("prodinger", {integer("n", 0), integer("m", 0)}, "0 <= m <= n", "\"0 ≤ m ≤ n\"",
           f::prodinger_lhs, f::prodinger_rhs, m_at_most_n);
    series("qinv001", {integer("m", 0), integer("n", 0)}, "m, n >= 0",
           "\"perform the substitution q→q^{-1}\"", f::qinv001_lhs, f::z0_inverted_rhs);
    series("qinv002", {integer("m", 0), integer("n", 0)}, "m, n >= 0",
           "\"perform the substitution q→q^{-1}\"", f::qinv002_lhs, f::z0_inverted_rhs);
    series("thm1", {integer("n", 0), integer("l", 0), integer("m", 0), letter("z")},
           "0 <= l, m <= n; 1 - z*q^(k-m) != 0 for k < n-l", "\"0 ≤ l,m ≤ n, there holds\"", f::thm1_lhs,
           f::thm1_rhs, v_thm1);
    series("thm2", {integer("m", 1), integer("n", 1), letter("z")}, "m, n >= 1; (z*q^-m;q)_(m+n) free of zero factors",
           "\"cannot be written as a complete\"", f::thm2_lhs, f::thm2_rhs, v_thm2);
    series("thm2_inf", {integer("m", 1), letter("z")}, "m >= 1; z = c*q^s with s >= 1; no vanishing 1 - z*q^j",
           "\"By taking the limit as n→∞ in Theorems\"", f::thm2_inf_lhs, f::thm2_inf_rhs, v_thm2_inf, true,
           growth);
    series("thm3", {integer("m", 0), integer("n", 0), letter("z"), letter("v")},
           "m, n >= 0; (v;q)_max(m,n) free of zero factors; 1 - z*q^(k-1) != 0", "\"symmetric generalization of the\"",
           f::thm3_lhs, f::thm3_rhs, v_thm3);
    series("thm4", {integer("m", 1), integer("n", 1), letter("z")},
           "m, n >= 1; (z*q^-m;q)_(n+m-1) free of zero factors", "\"Similarly to the proof of\"", f::thm4_lhs,
           f::thm4_rhs, v_thm4);
    series("thm4_inf", {integer("m", 1), letter("z")}, "m >= 1; z = c*q^s with s >= 1; no vanishing 1 - z*q^j",
           "\"By taking the limit as n→∞ in Theorems\"", f::thm4_inf_lhs, f::thm4_inf_rhs, v_thm4_inf, true,
           growth);
    series("u81", {}, "none", "\"Uchimura proved the following identity\"", f::u81_lhs, f::u81_rhs, nullptr, true,
           "term k has valuation C(k+1,2) on the left and k on the right");
    series("uchimura_m", {integer("n", 1), integer("m", 0)}, "n >= 1, m >= 0", "\"obtained a generalization of\"",
           f::uchimura_m_lhs, f::uchimura_m_rhs);
    series("van_hamme", {integer("n", 1)}, "n >= 1", "\"gave the following finite form\"", f::van_hamme_lhs,
           f::van_hamme_rhs);

    using limits::RationalCheck;
    rational("dilch2_noq", {integer("m", 1), integer("n", 1), ParamSpec{"x", ParamKind::rational, 0}},
             "m, n >= 1; x avoids the poles", "\"we can derive the following result from\"",
             [](const ParamSet &p) { return limits::check_dilch2_noq(*p.m, *p.n, *p.xr); });
    rational("dilcher_noq", {integer("m", 1), integer("n", 1)}, "m, n >= 1", "\"multiple generalization\"",
             [](const ParamSet &p) { return limits::check_dilcher_noq(*p.m, *p.n); });
    rational("multi_noq", {integer("m", 1), integer("n", 1), ParamSpec{"x", ParamKind::rational, 0}},
             "m, n >= 1; x avoids the poles", "\"we multiply both sides of\"",
             [](const ParamSet &p) { return limits::check_multi_noq(*p.m, *p.n, *p.xr); });
    rational("multi_noq_xm", {integer("m", 1), integer("n", 1)}, "m, n >= 1", "\"taking the limit as x→m\"",
             [](const ParamSet &p) { return limits::check_multi_noq_xm_limit(*p.m, *p.n); });
    rational("trigo", {integer("n", 1)}, "n >= 1", "\"q-analogue of the celebrated identity\"",
             [](const ParamSet &p) { return limits::check_trigo(*p.n); });
    rational("zeng_key", {integer("m", 1), ParamSpec{"a", ParamKind::rational_list, 0}},
             "m >= 1; a nonempty, pairwise distinct, nonzero", "\"the following key identity appearing\"",
             [](const ParamSet &p) { return limits::check_zeng_key(*p.a, *p.m); }, v_zeng_key);
    return r;
}

inline const std::vector<Entry> &registry()
{
    static const std::vector<Entry> entries = build_registry();
    return entries;
}

inline const Entry &lookup(const std::string &id)
{
    for (const auto &e : registry()) {
        if (e.desc.id == id) {
            return e;
        }
    }
    throw unknown_identity(id);
}

inline bool is_bound(const ParamSet &p, const std::string &name)
{
    if (name == "n") return p.n.has_value();
    if (name == "m") return p.m.has_value();
    if (name == "l") return p.l.has_value();
    if (name == "z") return p.z.has_value();
    if (name == "v") return p.v.has_value();
    if (name == "y") return p.y.has_value();
    if (name == "a") return p.a.has_value();
    return false;
}

inline std::optional<std::int64_t> int_value(const ParamSet &p, const std::string &name)
{
    if (name == "n") return p.n;
    if (name == "m") return p.m;
    if (name == "l") return p.l;
    return std::nullopt;
}

} // namespace detail

// The series identities, sorted by id.
inline std::vector<IdentityDescriptor> list_identities()
{
    std::vector<IdentityDescriptor> out;
    for (const auto &e : detail::registry()) {
        if (e.desc.group == Group::series) {
            out.push_back(e.desc);
        }
    }
    return out;
}

// The exact rational checks, sorted by id.
inline std::vector<IdentityDescriptor> list_rational_checks()
{
    std::vector<IdentityDescriptor> out;
    for (const auto &e : detail::registry()) {
        if (e.desc.group == Group::rational) {
            out.push_back(e.desc);
        }
    }
    return out;
}

inline const IdentityDescriptor &find_identity(const std::string &id)
{
    return detail::lookup(id).desc;
}

// nullopt when p is admissible for id, otherwise a description of the first
// violated constraint.
inline std::optional<std::string> validate_params(const std::string &id, const ParamSet &p)
{
    const detail::Entry &e = detail::lookup(id);
    const auto &params = e.desc.params;
    auto declared = [&](const char *name) {
        return std::any_of(params.begin(), params.end(), [&](const ParamSpec &s) { return s.name == name; });
    };
    for (const auto &s : params) {
        bool bound = s.name == "x" ? (s.kind == ParamKind::rational ? p.xr.has_value() : p.x.has_value())
                                   : detail::is_bound(p, s.name);
        if (!bound) {
            return "missing parameter " + s.name;
        }
        if (s.kind == ParamKind::integer) {
            std::int64_t v = *detail::int_value(p, s.name);
            if (v < s.min) {
                return s.name + " must be >= " + std::to_string(s.min);
            }
        }
    }
    for (const char *name : {"n", "m", "l", "z", "v", "y", "a"}) {
        if (detail::is_bound(p, name) && !declared(name)) {
            return std::string{"unexpected parameter "} + name;
        }
    }
    bool wants_monomial_x = false, wants_rational_x = false;
    for (const auto &s : params) {
        if (s.name == "x") {
            (s.kind == ParamKind::rational ? wants_rational_x : wants_monomial_x) = true;
        }
    }
    if ((p.x && !wants_monomial_x) || (p.xr && !wants_rational_x)) {
        return std::string{"unexpected parameter x"};
    }
    if (e.extra) {
        return e.extra(p);
    }
    return std::nullopt;
}

// Both sides are evaluated at a working window W starting at prec; when
// negative exponents cost precision the window is widened by the shortfall.
inline QLaurentSeries evaluate_side(const std::string &id, Side side, const ParamSet &p, std::int64_t prec)
{
    const detail::Entry &e = detail::lookup(id);
    if (e.desc.group != Group::series) {
        throw std::invalid_argument(id + " is a rational check, not a series identity");
    }
    detail::SideFn fn = side == Side::lhs ? e.lhs : e.rhs;
    std::int64_t w = prec;
    try {
        for (int attempt = 0; attempt < 12; ++attempt) {
            QLaurentSeries r = fn(p, w);
            if (r.prec() >= prec) {
                return truncate(r, prec);
            }
            w += std::max<std::int64_t>(prec - r.prec(), 1);
        }
    } catch (const pole_in_range &err) {
        throw pole_in_range(id, err);
    } catch (const divergent_formal_sum &err) {
        throw divergent_formal_sum(id + ": " + err.what());
    } catch (const pole_at_constant &err) {
        throw pole_at_constant(id + ": " + err.what());
    }
    throw error(id + ": working precision " + std::to_string(w) + " did not reach order " + std::to_string(prec));
}

// Margin between the comparison window and the larger side valuation below
// which an agreement is not counted as evidence.
inline constexpr std::int64_t window_margin = 10;

namespace detail
{

inline VerificationReport verify_rational(const Entry &e, const ParamSet &p, VerificationReport rep)
{
    try {
        limits::RationalCheck c = e.check(p);
        if (c.holds()) {
            rep.status = Status::pass;
        } else {
            rep.status = Status::fail;
            rep.first_mismatch = Mismatch{0, to_string(c.lhs), to_string(c.rhs)};
        }
    } catch (const pole_at_x &err) {
        rep.status = Status::skipped;
        rep.skip_reason = err.what();
    } catch (const duplicate_values &err) {
        rep.status = Status::skipped;
        rep.skip_reason = err.what();
    } catch (const std::exception &err) {
        rep.status = Status::fail;
        rep.diagnostic = err.what();
    }
    return rep;
}

inline VerificationReport verify_series(const std::string &id, const ParamSet &p, std::int64_t prec,
                                        VerificationReport rep)
{
    try {
        QLaurentSeries lhs = evaluate_side(id, Side::lhs, p, prec);
        QLaurentSeries rhs = evaluate_side(id, Side::rhs, p, prec);
        Comparison c = equal_to_precision(lhs, rhs);
        if (c.kind == Comparison::Kind::first_mismatch) {
            rep.status = Status::fail;
            rep.first_mismatch = Mismatch{c.exponent, to_string(c.lhs), to_string(c.rhs)};
            return rep;
        }
        std::int64_t top_val = std::numeric_limits<std::int64_t>::min();
        for (const QLaurentSeries *s : {&lhs, &rhs}) {
            if (!s->is_zero()) {
                top_val = std::max(top_val, s->val());
            }
        }
        if (c.kind == Comparison::Kind::insufficient_window || top_val > c.window - window_margin) {
            rep.status = Status::skipped;
            rep.skip_reason = "insufficient window: order " + std::to_string(prec) + " is below valuation "
                              + std::to_string(top_val) + " + " + std::to_string(window_margin);
            return rep;
        }
        rep.status = Status::pass;
    } catch (const pole_in_range &err) {
        rep.status = Status::skipped;
        rep.skip_reason = std::string{"pole: "} + err.what();
    } catch (const pole_at_constant &err) {
        rep.status = Status::skipped;
        rep.skip_reason = std::string{"pole: "} + err.what();
    } catch (const std::exception &err) {
        rep.status = Status::fail;
        rep.diagnostic = err.what();
    }
    return rep;
}

} // namespace detail

// Validates, evaluates and compares. Never throws for a known id: constraint
// violations become skipped rows and evaluation errors become failures.
inline VerificationReport verify(const std::string &id, const ParamSet &p, std::int64_t prec)
{
    const detail::Entry &e = detail::lookup(id);
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.identity = id;
    rep.params = render(p);
    rep.order = prec;
    if (auto violation = validate_params(id, p)) {
        rep.status = Status::skipped;
        rep.skip_reason = *violation;
    } else if (e.desc.group == Group::rational) {
        rep = detail::verify_rational(e, p, rep);
    } else {
        rep = detail::verify_series(id, p, prec, rep);
    }
    rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
}

struct SuiteEntry {
    std::string id;
    ParamSet params;
};

// Substitution points for the letter parameters; `seed` picks one of the
// fixed lists.
struct PointLists {
    std::vector<QMonomial> z, v, xy;
    std::vector<Rational> rational_x;
    std::vector<std::vector<Rational>> tuples;
};

inline constexpr int point_list_count = 2;

inline PointLists point_lists(int seed = 0)
{
    auto mono = [](std::int64_t num, std::int64_t den, std::int64_t s) { return QMonomial{make_rational(num, den), s}; };
    PointLists p;
    if (seed % point_list_count == 0) {
        p.z = {mono(2, 1, 0), mono(1, 2, 0), mono(-3, 1, 0), mono(1, 1, 1),
               mono(-1, 1, 1), mono(2, 1, 1), mono(1, 1, 2), mono(-1, 2, 1)};
        p.v = {mono(1, 1, 1), mono(3, 1, 0), mono(-2, 1, 1)};
        p.xy = {mono(2, 1, 0), mono(1, 1, 1), mono(-1, 1, 1)};
    } else {
        p.z = {mono(3, 1, 0), mono(-1, 2, 0), mono(2, 3, 0), mono(-2, 1, 1),
               mono(3, 1, 1), mono(1, 1, 3), mono(-1, 1, 2), mono(1, 3, 1)};
        p.v = {mono(1, 1, 2), mono(-1, 3, 0), mono(5, 1, 1)};
        p.xy = {mono(3, 1, 0), mono(1, 1, 2), mono(-2, 1, 1)};
    }
    p.rational_x = {make_rational(7, 2), make_rational(9, 2), make_rational(11, 3), make_rational(-5, 3),
                    Rational{1000000}};
    const std::vector<Rational> base{Rational{2}, make_rational(-1, 3), make_rational(5, 2), Rational{-4},
                                     make_rational(3, 7)};
    for (std::size_t len = 1; len <= base.size(); ++len) {
        p.tuples.emplace_back(base.begin(), base.begin() + static_cast<std::ptrdiff_t>(len));
    }
    return p;
}

namespace detail
{

inline void expand(const IdentityDescriptor &d, std::size_t i, ParamSet cur, std::int64_t max_n,
                   const PointLists &pts, std::vector<SuiteEntry> &out)
{
    if (i == d.params.size()) {
        out.push_back(SuiteEntry{d.id, cur});
        return;
    }
    const ParamSpec &s = d.params[i];
    switch (s.kind) {
    case ParamKind::integer:
        for (std::int64_t v = s.min; v <= max_n; ++v) {
            ParamSet next = cur;
            (s.name == "n" ? next.n : s.name == "m" ? next.m : next.l) = v;
            expand(d, i + 1, next, max_n, pts, out);
        }
        break;
    case ParamKind::monomial: {
        const auto &list = s.name == "z" ? pts.z : s.name == "v" ? pts.v : pts.xy;
        for (const auto &v : list) {
            ParamSet next = cur;
            (s.name == "z" ? next.z : s.name == "v" ? next.v : s.name == "x" ? next.x : next.y) = v;
            expand(d, i + 1, next, max_n, pts, out);
        }
        break;
    }
    case ParamKind::rational:
        for (const auto &v : pts.rational_x) {
            ParamSet next = cur;
            next.xr = v;
            expand(d, i + 1, next, max_n, pts, out);
        }
        break;
    case ParamKind::rational_list:
        for (const auto &v : pts.tuples) {
            ParamSet next = cur;
            next.a = v;
            expand(d, i + 1, next, max_n, pts, out);
        }
        break;
    }
}

} // namespace detail

// Every series identity over the box of integer parameters from their minima
// to max_n, crossed with the letter point lists. Inadmissible points stay in
// the list; verify reports them as skipped.
inline std::vector<SuiteEntry> default_suite(std::int64_t max_n, int seed = 0)
{
    if (max_n < 1) {
        throw std::invalid_argument("max_n must be >= 1");
    }
    PointLists pts = point_lists(seed);
    std::vector<SuiteEntry> out;
    for (const auto &d : list_identities()) {
        detail::expand(d, 0, ParamSet{}, max_n, pts, out);
    }
    return out;
}

// The rational checks over m, n <= max_n, the fixed x points and the
// prefixes of the fixed value tuple.
inline std::vector<SuiteEntry> rational_suite(std::int64_t max_n, int seed = 0)
{
    if (max_n < 1) {
        throw std::invalid_argument("max_n must be >= 1");
    }
    PointLists pts = point_lists(seed);
    std::vector<SuiteEntry> out;
    for (const auto &d : list_rational_checks()) {
        detail::expand(d, 0, ParamSet{}, max_n, pts, out);
    }
    return out;
}

} // namespace qdiv

#endif
