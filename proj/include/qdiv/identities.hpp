#ifndef QDIV_IDENTITIES_HPP
#define QDIV_IDENTITIES_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <qdiv/errors.hpp>
#include <qdiv/laurent_series.hpp>
#include <qdiv/monomial.hpp>
#include <qdiv/qobjects.hpp>
#include <qdiv/rational.hpp>

namespace qdiv
{

// Bindings for one evaluation. Integers n, m, l; letter values z, v, x, y;
// the rational-group checks use xr (a plain rational x) and a.
struct ParamSet {
    std::optional<std::int64_t> n, m, l;
    std::optional<QMonomial> z, v, x, y;
    std::optional<Rational> xr;
    std::optional<std::vector<Rational>> a;

    friend bool operator==(const ParamSet &, const ParamSet &) = default;
};

// Canonical text: bound names in alphabetical order, space separated,
// e.g. "l=1 m=2 n=3 z=-1*q^1" or "a=(1,2,3) m=2".
inline std::string render(const ParamSet &p)
{
    std::vector<std::string> parts;
    if (p.a) {
        std::string s = "a=(";
        for (std::size_t i = 0; i < p.a->size(); ++i) {
            s += (i ? "," : "") + to_string((*p.a)[i]);
        }
        parts.push_back(s + ")");
    }
    auto num = [&](const char *name, const std::optional<std::int64_t> &v) {
        if (v) {
            parts.push_back(std::string{name} + "=" + std::to_string(*v));
        }
    };
    auto mono = [&](const char *name, const std::optional<QMonomial> &v) {
        if (v) {
            parts.push_back(std::string{name} + "=" + to_string(*v));
        }
    };
    num("l", p.l);
    num("m", p.m);
    num("n", p.n);
    mono("v", p.v);
    mono("x", p.x);
    if (p.xr) {
        parts.push_back("x=" + to_string(*p.xr));
    }
    mono("y", p.y);
    mono("z", p.z);
    std::string out;
    for (const auto &s : parts) {
        out += (out.empty() ? "" : " ") + s;
    }
    return out;
}

namespace formulas
{

inline std::int64_t tri(std::int64_t k)
{
    return k * (k + 1) / 2;
}

// (-1)^e for any integer e.
inline Rational sign(std::int64_t e)
{
    return e % 2 == 0 ? Rational{1} : Rational{-1};
}

// Accumulates a product of simple factors onto 1 + O(q^W). Binomial factors
// whose exponent lies past the live window are skipped: they cannot change
// any tracked coefficient.
class term
{
public:
    explicit term(std::int64_t w) : s_(truncate(QLaurentSeries::constant(Rational{1}), w)) {}

    term &times(const Rational &c)
    {
        if (c == 0) {
            zero_ = true;
        } else if (!zero_) {
            s_ = scale(s_, c);
        }
        return *this;
    }

    term &times(const QMonomial &a)
    {
        if (!zero_) {
            s_ = mul_monomial(s_, a);
        }
        return *this;
    }

    term &times_q(std::int64_t e)
    {
        if (!zero_) {
            s_ = shift(s_, e);
        }
        return *this;
    }

    // Multiplies by an exact polynomial or another windowed series.
    term &times(const QLaurentSeries &f)
    {
        if (f.is_exact() && f.is_zero()) {
            zero_ = true;
        } else if (!zero_) {
            s_ = mul(s_, f);
        }
        return *this;
    }

    // * (1 - c q^e)
    term &times_binomial(const Rational &c, std::int64_t e)
    {
        if (c == 1 && e == 0) {
            zero_ = true;
        } else if (!zero_ && !past_window(e)) {
            s_ = mul_binomial(s_, c, e);
        }
        return *this;
    }

    // / (1 - c q^e); a vanishing factor is a pole even when the numerator is 0.
    term &over_binomial(const Rational &c, std::int64_t e)
    {
        if (c == 1 && e == 0) {
            throw pole_at_constant("denominator factor 1 - q^0 vanishes");
        }
        if (!zero_ && !past_window(e)) {
            s_ = div_binomial(s_, c, e);
        }
        return *this;
    }

    // * (a;q)_N
    term &times_poch(const QMonomial &a, std::int64_t n)
    {
        for (std::int64_t j = 0; j < n; ++j) {
            times_binomial(a.c, a.s + j);
        }
        return *this;
    }

    // / (a;q)_N
    term &over_poch(const QMonomial &a, std::int64_t n)
    {
        for (std::int64_t j = 0; j < n; ++j) {
            if (a.vanishes_at(j)) {
                throw pole_at_constant("(" + to_string(a) + ";q)_" + std::to_string(n) + " contains the factor 0");
            }
            over_binomial(a.c, a.s + j);
        }
        return *this;
    }

    QLaurentSeries value() const
    {
        return zero_ ? QLaurentSeries::exact_zero() : s_;
    }

private:
    bool past_window(std::int64_t e) const
    {
        return e > 0 && !s_.is_exact() && e > s_.prec() - s_.val();
    }

    QLaurentSeries s_;
    bool zero_ = false;
};

template <class F>
QLaurentSeries finite_sum(std::int64_t lo, std::int64_t hi, F &&f)
{
    QLaurentSeries acc = QLaurentSeries::exact_zero();
    for (std::int64_t k = lo; k <= hi; ++k) {
        acc = add(acc, f(k));
    }
    return acc;
}

inline QLaurentSeries one(std::int64_t w)
{
    return truncate(QLaurentSeries::constant(Rational{1}), w);
}

inline QMonomial q_over(const QMonomial &z, std::int64_t e = 1)
{
    return QMonomial::q_power(e) / z;
}

// sum_{k=lo}^{hi} q^k / ((1 - z q^(k-1)) (1 - q^k))
inline QLaurentSeries zq_lambert(const QMonomial &z, std::int64_t lo, std::int64_t hi, std::int64_t w)
{
    return finite_sum(lo, hi, [&](std::int64_t k) {
        return term(w).times_q(k).over_binomial(z.c, z.s + k - 1).over_binomial(Rational{1}, k).value();
    });
}

// sum over 0 <= k <= n, k != m of q^(k-m)/(1 - q^(k-m))
inline QLaurentSeries punctured_harmonic(std::int64_t n, std::int64_t m, std::int64_t w)
{
    return finite_sum(0, n, [&](std::int64_t k) {
        return k == m ? QLaurentSeries::exact_zero() : lambert_term(QMonomial::q_power(k - m), w);
    });
}

// ---- classical single-sum identities ----

inline QLaurentSeries u81_lhs(const ParamSet &, std::int64_t w)
{
    return sum_terms(1, w, [&](std::int64_t k) {
        return term(w).times(sign(k - 1)).times_q(tri(k)).over_poch(QMonomial::q_power(1), k)
            .over_binomial(Rational{1}, k).value();
    });
}

inline QLaurentSeries u81_rhs(const ParamSet &, std::int64_t w)
{
    return sum_terms(1, w, [&](std::int64_t k) { return lambert_term(QMonomial::q_power(k), w); });
}

inline QLaurentSeries van_hamme_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n;
    return finite_sum(1, n, [&](std::int64_t k) {
        return term(w).times(sign(k - 1)).times(qbinomial(n, k)).times_q(tri(k)).over_binomial(Rational{1}, k).value();
    });
}

inline QLaurentSeries van_hamme_rhs(const ParamSet &p, std::int64_t w)
{
    return q_harmonic(*p.n, w);
}

inline QLaurentSeries uchimura_m_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    return finite_sum(1, n, [&](std::int64_t k) {
        return term(w).times(sign(k - 1)).times(qbinomial(n, k)).times_q(tri(k)).over_binomial(Rational{1}, k + m)
            .value();
    });
}

inline QLaurentSeries uchimura_m_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    return finite_sum(1, n, [&](std::int64_t k) {
        QLaurentSeries inv = invert(truncate(qbinomial(k + m, m), w));
        return mul(lambert_term(QMonomial::q_power(k), w), inv);
    });
}

inline QLaurentSeries dilcher_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    return finite_sum(1, n, [&](std::int64_t k) {
        term t(w);
        t.times(sign(k - 1)).times(qbinomial(n, k)).times_q(k * (k - 1) / 2 + k * m);
        for (std::int64_t j = 0; j < m; ++j) {
            t.over_binomial(Rational{1}, k);
        }
        return t.value();
    });
}

// Complete homogeneous sum h_m of L_k = q^k/(1 - q^k), k = 1..n.
inline QLaurentSeries dilcher_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    std::vector<QLaurentSeries> h(static_cast<std::size_t>(m) + 1, QLaurentSeries::zero(w));
    h[0] = one(w);
    for (std::int64_t k = 1; k <= n; ++k) {
        QLaurentSeries lk = lambert_term(QMonomial::q_power(k), w);
        for (std::int64_t j = 1; j <= m; ++j) {
            h[static_cast<std::size_t>(j)] = add(h[static_cast<std::size_t>(j)], mul(lk, h[static_cast<std::size_t>(j - 1)]));
        }
    }
    return h.back();
}

inline QLaurentSeries prodinger_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    return finite_sum(0, n, [&](std::int64_t k) {
        if (k == m) {
            return QLaurentSeries::exact_zero();
        }
        return term(w).times(sign(k - 1)).times(qbinomial(n, k)).times_q(tri(k)).over_binomial(Rational{1}, k - m)
            .value();
    });
}

// The summand is q^(k-m)/(1 - q^(k-m)); with q^k in its place the identity
// already fails at m = n = 1.
inline QLaurentSeries prodinger_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    QLaurentSeries s = finite_sum(0, n, [&](std::int64_t k) {
        if (k == m) {
            return QLaurentSeries::exact_zero();
        }
        return lambert_term(QMonomial::q_power(k - m), w);
    });
    return term(w).times(sign(m)).times_q(tri(m)).times(qbinomial(n, m)).times(s).value();
}

// ---- the z-deformations ----

inline QLaurentSeries thm1_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m, l = *p.l;
    const QMonomial z = *p.z;
    return finite_sum(0, n, [&](std::int64_t k) {
        if (k == m) {
            return QLaurentSeries::exact_zero();
        }
        return term(w)
            .times(qbinomial(n, k))
            .times_poch(q_over(z), k)
            .times_poch(z.shifted(-l), n - k)
            .times(z.pow(k))
            .over_binomial(Rational{1}, k - m)
            .value();
    });
}

inline QLaurentSeries thm1_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m, l = *p.l;
    const QMonomial z = *p.z;
    QLaurentSeries zs = finite_sum(0, n - l - 1, [&](std::int64_t k) { return lambert_term(z.shifted(k - m), w); });
    QLaurentSeries bracket = sub(zs, punctured_harmonic(n, m, w));
    return term(w)
        .times(sign(m))
        .times_q(tri(m))
        .times(qbinomial(n, m))
        .times_poch(z.shifted(-l), l)
        .times_poch(z.shifted(-m), n - l)
        .times(bracket)
        .value();
}

inline QLaurentSeries thm2_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    const QMonomial z = *p.z;
    return finite_sum(1, n, [&](std::int64_t k) {
        term t(w);
        t.times(qbinomial(n, k)).times_poch(q_over(z, m), k).times_poch(z, n - k).times(z.pow(k));
        t.over_poch(z.shifted(-m), m + n);
        for (std::int64_t j = 0; j < m; ++j) {
            t.over_binomial(Rational{1}, k);
        }
        return t.value();
    });
}

inline QLaurentSeries thm2_rhs(const ParamSet &p, std::int64_t w)
{
    return chain_sum(ChainSpec{*p.m, *p.n, ChainKind::lambert_product}, *p.z, w);
}

// sum_{k=1}^{a} (q/z)_k (v q^b)_k (z)_(a-k) (z)_b z^k / ((q)_k (v)_k (q)_(a-k) (q^k)_(b+1)),
// with the v factors dropped when v is absent and q^(bk) included when asked.
inline QLaurentSeries sym_side(const QMonomial &z, const std::optional<QMonomial> &v, std::int64_t a,
                               std::int64_t b, bool extra_power, std::int64_t w)
{
    const QMonomial q1 = QMonomial::q_power(1);
    return finite_sum(1, a, [&](std::int64_t k) {
        term t(w);
        t.times_poch(q_over(z), k).times_poch(z, a - k).times_poch(z, b).times(z.pow(k));
        if (v) {
            t.times_poch(v->shifted(b), k).over_poch(*v, k);
        }
        if (extra_power) {
            t.times_q(b * k);
        }
        t.over_poch(q1, k).over_poch(q1, a - k).over_poch(QMonomial::q_power(k), b + 1);
        return t.value();
    });
}

// (1 - z/q)(z)_m(z)_n/((q)_m(q)_n) * (S_m - S_n), S_j = sum_{k<=j} q^k/((1 - zq^(k-1))(1 - q^k))
inline QLaurentSeries sym_rhs(const QMonomial &z, std::int64_t m, std::int64_t n, std::int64_t w)
{
    const QMonomial q1 = QMonomial::q_power(1);
    QLaurentSeries diff = sub(zq_lambert(z, 1, m, w), zq_lambert(z, 1, n, w));
    return term(w)
        .times_binomial(z.c, z.s - 1)
        .times_poch(z, m)
        .times_poch(z, n)
        .over_poch(q1, m)
        .over_poch(q1, n)
        .times(diff)
        .value();
}

inline QLaurentSeries thm3_lhs(const ParamSet &p, std::int64_t w)
{
    return sub(sym_side(*p.z, p.v, *p.n, *p.m, false, w), sym_side(*p.z, p.v, *p.m, *p.n, false, w));
}

inline QLaurentSeries thm3_rhs(const ParamSet &p, std::int64_t w)
{
    return sym_rhs(*p.z, *p.m, *p.n, w);
}

inline QLaurentSeries lagrange_lemma_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, l = *p.l;
    const QMonomial z = *p.z, x = *p.x;
    return finite_sum(0, n, [&](std::int64_t k) {
        return term(w)
            .times(qbinomial(n, k))
            .times_poch(q_over(z), k)
            .times_poch(z.shifted(-l), n - k)
            .times(z.pow(k))
            .over_binomial(x.c, x.s + k)
            .value();
    });
}

inline QLaurentSeries lagrange_lemma_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, l = *p.l;
    const QMonomial z = *p.z, x = *p.x;
    return term(w)
        .times_poch(QMonomial::q_power(1), n)
        .times_poch(x * z, n - l)
        .times_poch(z.shifted(-l), l)
        .over_poch(x, n + 1)
        .value();
}

inline QLaurentSeries cor_ourdiv_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    const QMonomial z = *p.z;
    return finite_sum(0, n, [&](std::int64_t k) {
        if (k == m) {
            return QLaurentSeries::exact_zero();
        }
        return term(w)
            .times(qbinomial(n, k))
            .times_poch(q_over(z), k)
            .times_poch(z, n - k)
            .times(z.pow(k))
            .over_binomial(Rational{1}, k - m)
            .value();
    });
}

inline QLaurentSeries cor_ourdiv_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    const QMonomial z = *p.z;
    QLaurentSeries zs = finite_sum(0, n - 1, [&](std::int64_t k) { return lambert_term(z.shifted(k - m), w); });
    return term(w)
        .times(sign(m))
        .times_q(tri(m))
        .times(qbinomial(n, m))
        .times_poch(z.shifted(-m), n)
        .times(sub(zs, punctured_harmonic(n, m, w)))
        .value();
}

inline QLaurentSeries cor_ourinfty_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t m = *p.m;
    const QMonomial z = *p.z;
    return sum_terms(0, w, [&](std::int64_t k) {
        if (k == m) {
            return QLaurentSeries::exact_zero();
        }
        return term(w)
            .times_poch(q_over(z), k)
            .times(z.pow(k))
            .over_poch(QMonomial::q_power(1), k)
            .over_binomial(Rational{1}, k - m)
            .value();
    });
}

inline QLaurentSeries cor_ourinfty_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t m = *p.m;
    const QMonomial z = *p.z;
    QLaurentSeries zs = shifted_lambert(z, m, 0, std::nullopt, std::nullopt, w);
    QLaurentSeries qs = shifted_lambert(QMonomial::q_power(0), m, 0, std::nullopt, m, w);
    return term(w)
        .times(sign(m))
        .times_q(tri(m))
        .times_poch(z.shifted(-m), m)
        .over_poch(QMonomial::q_power(1), m)
        .times(sub(zs, qs))
        .value();
}

inline QLaurentSeries cor_ourinfty2_lhs(const ParamSet &p, std::int64_t w)
{
    const QMonomial z = *p.z;
    return sum_terms(1, w, [&](std::int64_t k) {
        return term(w)
            .times_poch(q_over(z), k)
            .times(z.pow(k))
            .over_poch(QMonomial::q_power(1), k)
            .over_binomial(Rational{1}, k)
            .value();
    });
}

inline QLaurentSeries cor_ourinfty2_rhs(const ParamSet &p, std::int64_t w)
{
    QLaurentSeries zs = shifted_lambert(*p.z, 0, 0, std::nullopt, std::nullopt, w);
    QLaurentSeries qs = shifted_lambert(QMonomial::q_power(0), 0, 1, std::nullopt, std::nullopt, w);
    return sub(zs, qs);
}

inline QLaurentSeries corteel_lovejoy_lhs(const ParamSet &, std::int64_t w)
{
    const QMonomial minus_one{Rational{-1}, 0};
    const QMonomial minus_q{Rational{-1}, 1};
    return sum_terms(1, w, [&](std::int64_t k) {
        return term(w)
            .times_poch(minus_one, k)
            .times(minus_q.pow(k))
            .over_poch(QMonomial::q_power(1), k)
            .over_binomial(Rational{1}, k)
            .value();
    });
}

inline QLaurentSeries corteel_lovejoy_rhs(const ParamSet &, std::int64_t w)
{
    return sum_terms(1, w, [&](std::int64_t k) {
        return term(w).times(Rational{-2}).times_q(k).over_binomial(Rational{1}, 2 * k).value();
    });
}

inline QLaurentSeries cor_our_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, l = *p.l;
    const QMonomial z = *p.z;
    return finite_sum(1, n, [&](std::int64_t k) {
        return term(w)
            .times(qbinomial(n, k))
            .times_poch(q_over(z), k)
            .times_poch(z.shifted(-l), n - k)
            .times(z.pow(k))
            .over_binomial(Rational{1}, k)
            .value();
    });
}

inline QLaurentSeries cor_our_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, l = *p.l;
    const QMonomial z = *p.z;
    QLaurentSeries zs = finite_sum(1, n - l, [&](std::int64_t k) { return lambert_term(z.shifted(k - 1), w); });
    return term(w).times_poch(z.shifted(-l), n).times(sub(zs, q_harmonic(n, w))).value();
}

inline QLaurentSeries cor1_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n;
    const QMonomial z = *p.z;
    return finite_sum(1, n, [&](std::int64_t k) {
        return term(w)
            .times(qbinomial(n, k))
            .times_poch(q_over(z), k)
            .times_poch(z, n - k)
            .times(z.pow(k))
            .over_binomial(Rational{1}, k)
            .value();
    });
}

// -(z/q;q)_(n+1) sum_k q^k/((1 - zq^(k-1))(1 - q^k)); without the leading
// minus the two sides differ by sign already at n = 1.
inline QLaurentSeries cor1_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n;
    const QMonomial z = *p.z;
    return term(w).times(Rational{-1}).times_poch(z.shifted(-1), n + 1).times(zq_lambert(z, 1, n, w)).value();
}

inline QLaurentSeries thm4_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t n = *p.n, m = *p.m;
    const QMonomial z = *p.z;
    return finite_sum(1, n, [&](std::int64_t k) {
        term t(w);
        t.times(qbinomial(n, k)).times_poch(q_over(z, m), k).times_poch(z.shifted(-1), n - k).times(z.pow(k));
        t.over_poch(z.shifted(-m), n + m - 1);
        for (std::int64_t j = 0; j < m; ++j) {
            t.over_binomial(Rational{1}, k);
        }
        return t.value();
    });
}

inline QLaurentSeries thm4_rhs(const ParamSet &p, std::int64_t w)
{
    return chain_sum(ChainSpec{*p.m, *p.n, ChainKind::lambert_difference}, *p.z, w);
}

// sum_{k>=1} (q^m/z)_k z^k / ((z q^-m)_len (q)_k (1 - q^k)^m)
inline QLaurentSeries chain_inf_lhs(const QMonomial &z, std::int64_t m, std::int64_t len, std::int64_t w)
{
    return sum_terms(1, w, [&](std::int64_t k) {
        term t(w);
        t.times_poch(q_over(z, m), k).times(z.pow(k)).over_poch(z.shifted(-m), len).over_poch(QMonomial::q_power(1), k);
        for (std::int64_t j = 0; j < m; ++j) {
            t.over_binomial(Rational{1}, k);
        }
        return t.value();
    });
}

inline QLaurentSeries thm2_inf_lhs(const ParamSet &p, std::int64_t w)
{
    return chain_inf_lhs(*p.z, *p.m, *p.m, w);
}

inline QLaurentSeries thm2_inf_rhs(const ParamSet &p, std::int64_t w)
{
    return chain_sum(ChainSpec{*p.m, std::nullopt, ChainKind::lambert_product}, *p.z, w);
}

inline QLaurentSeries thm4_inf_lhs(const ParamSet &p, std::int64_t w)
{
    return chain_inf_lhs(*p.z, *p.m, *p.m - 1, w);
}

inline QLaurentSeries thm4_inf_rhs(const ParamSet &p, std::int64_t w)
{
    return chain_sum(ChainSpec{*p.m, std::nullopt, ChainKind::lambert_difference}, *p.z, w);
}

// ---- the symmetric family ----

// (xz)_b (yz)_b / ((q)_b (xyz)_b) * sum_{k=0}^{a} (x)_k (y)_k (v q^b)_k (z)_(a-k) z^k
//   / ((q)_k (v)_k (xyz q^b)_k (q)_(a-k))
inline QLaurentSeries guo_zeng_side(const ParamSet &p, std::int64_t a, std::int64_t b, std::int64_t w)
{
    const QMonomial x = *p.x, y = *p.y, v = *p.v, z = *p.z;
    const QMonomial q1 = QMonomial::q_power(1);
    const QMonomial xyz = x * y * z;
    QLaurentSeries s = finite_sum(0, a, [&](std::int64_t k) {
        return term(w)
            .times_poch(x, k)
            .times_poch(y, k)
            .times_poch(v.shifted(b), k)
            .times_poch(z, a - k)
            .times(z.pow(k))
            .over_poch(q1, k)
            .over_poch(v, k)
            .over_poch(xyz.shifted(b), k)
            .over_poch(q1, a - k)
            .value();
    });
    return term(w).times_poch(x * z, b).times_poch(y * z, b).over_poch(q1, b).over_poch(xyz, b).times(s).value();
}

inline QLaurentSeries guo_zeng_lhs(const ParamSet &p, std::int64_t w)
{
    return guo_zeng_side(p, *p.n, *p.m, w);
}

inline QLaurentSeries guo_zeng_rhs(const ParamSet &p, std::int64_t w)
{
    return guo_zeng_side(p, *p.m, *p.n, w);
}

inline QLaurentSeries newsym_side(const ParamSet &p, std::int64_t a, std::int64_t b, std::int64_t w)
{
    const QMonomial x = *p.x, v = *p.v, z = *p.z;
    const QMonomial q1 = QMonomial::q_power(1);
    return finite_sum(1, a, [&](std::int64_t k) {
        return term(w)
            .times_poch(q_over(z), k)
            .times_poch(v.shifted(b), k)
            .times_poch(z, a - k)
            .times_poch(x * z, b)
            .times(z.pow(k))
            .over_poch(q1, k)
            .over_poch(v, k)
            .over_poch(q1, a - k)
            .over_poch(x.shifted(k), b + 1)
            .value();
    });
}

inline QLaurentSeries newsym_lhs(const ParamSet &p, std::int64_t w)
{
    return sub(newsym_side(p, *p.n, *p.m, w), newsym_side(p, *p.m, *p.n, w));
}

inline QLaurentSeries newsym_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t m = *p.m, n = *p.n;
    const QMonomial x = *p.x, z = *p.z;
    const QMonomial q1 = QMonomial::q_power(1);
    auto piece = [&](std::int64_t a, std::int64_t b) {
        return pochhammer_exact(z, a) * pochhammer_exact(q1, b) * pochhammer_exact(x * z, b)
               * pochhammer_exact(x.shifted(1), a);
    };
    return term(w)
        .times(piece(m, n) - piece(n, m))
        .over_poch(q1, m)
        .over_poch(q1, n)
        .over_poch(x.shifted(1), m)
        .over_poch(x.shifted(1), n)
        .over_binomial(x.c, x.s)
        .value();
}

inline QLaurentSeries cor_v0_lhs(const ParamSet &p, std::int64_t w)
{
    return sub(sym_side(*p.z, std::nullopt, *p.n, *p.m, false, w), sym_side(*p.z, std::nullopt, *p.m, *p.n, false, w));
}

inline QLaurentSeries cor_vinf_lhs(const ParamSet &p, std::int64_t w)
{
    return sub(sym_side(*p.z, std::nullopt, *p.n, *p.m, true, w), sym_side(*p.z, std::nullopt, *p.m, *p.n, true, w));
}

// sum_{k=1}^{a} (-1)^k q^(C(k+1,2) + extra(a,b)*k) / ((q)_k (q)_(a-k) (q^k)_(b+1))
inline QLaurentSeries z0_side(std::int64_t a, std::int64_t b, std::int64_t extra, std::int64_t w)
{
    const QMonomial q1 = QMonomial::q_power(1);
    return finite_sum(1, a, [&](std::int64_t k) {
        return term(w)
            .times(sign(k))
            .times_q(tri(k) + extra * k)
            .over_poch(q1, k)
            .over_poch(q1, a - k)
            .over_poch(QMonomial::q_power(k), b + 1)
            .value();
    });
}

// (sum_{k<=m} f_k - sum_{k<=n} f_k) / ((q)_m (q)_n); f_k = q^k/(1-q^k) or 1/(1-q^k)
inline QLaurentSeries z0_rhs(std::int64_t m, std::int64_t n, bool inverted, std::int64_t w)
{
    auto f = [&](std::int64_t k) { return inverted ? invert_binomial(Rational{1}, k, w) : lambert_term(QMonomial::q_power(k), w); };
    QLaurentSeries diff = sub(finite_sum(1, m, f), finite_sum(1, n, f));
    const QMonomial q1 = QMonomial::q_power(1);
    return term(w).over_poch(q1, m).over_poch(q1, n).times(diff).value();
}

inline QLaurentSeries cor001_lhs(const ParamSet &p, std::int64_t w)
{
    return sub(z0_side(*p.n, *p.m, 0, w), z0_side(*p.m, *p.n, 0, w));
}

inline QLaurentSeries cor002_lhs(const ParamSet &p, std::int64_t w)
{
    return sub(z0_side(*p.n, *p.m, *p.m, w), z0_side(*p.m, *p.n, *p.n, w));
}

inline QLaurentSeries qinv001_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t m = *p.m, n = *p.n;
    return sub(z0_side(n, m, m - n, w), z0_side(m, n, n - m, w));
}

inline QLaurentSeries qinv002_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t m = *p.m, n = *p.n;
    return sub(z0_side(n, m, -n, w), z0_side(m, n, -m, w));
}

inline QLaurentSeries z0_harmonic_rhs(const ParamSet &p, std::int64_t w)
{
    return z0_rhs(*p.m, *p.n, false, w);
}

inline QLaurentSeries z0_inverted_rhs(const ParamSet &p, std::int64_t w)
{
    return z0_rhs(*p.m, *p.n, true, w);
}

// sum_{k>=1} (-1)^(k-1) q^(C(k+1,2) + extra*k) / ((q)_k (q^k)_(m+1))
inline QLaurentSeries gen_u81_sum(std::int64_t m, std::int64_t extra, std::int64_t w)
{
    return sum_terms(1, w, [&](std::int64_t k) {
        return term(w)
            .times(sign(k - 1))
            .times_q(tri(k) + extra * k)
            .over_poch(QMonomial::q_power(1), k)
            .over_poch(QMonomial::q_power(k), m + 1)
            .value();
    });
}

inline QLaurentSeries gen_u81_a_lhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t m = *p.m;
    QLaurentSeries tail = finite_sum(1, m, [&](std::int64_t k) {
        return term(w)
            .times(sign(k - 1))
            .times_q(tri(k))
            .over_poch(QMonomial::q_power(1), m - k)
            .over_binomial(Rational{1}, k)
            .value();
    });
    return sub(gen_u81_sum(m, 0, w), tail);
}

inline QLaurentSeries gen_u81_b_lhs(const ParamSet &p, std::int64_t w)
{
    return gen_u81_sum(*p.m, *p.m, w);
}

inline QLaurentSeries gen_u81_rhs(const ParamSet &p, std::int64_t w)
{
    const std::int64_t m = *p.m;
    QLaurentSeries s = sum_terms(m + 1, w, [&](std::int64_t k) { return lambert_term(QMonomial::q_power(k), w); });
    return term(w).over_poch(QMonomial::q_power(1), m).times(s).value();
}

} // namespace formulas
} // namespace qdiv

#endif
