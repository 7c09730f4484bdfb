#ifndef QDIV_QOBJECTS_HPP
#define QDIV_QOBJECTS_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <qdiv/errors.hpp>
#include <qdiv/laurent_series.hpp>
#include <qdiv/monomial.hpp>
#include <qdiv/rational.hpp>

namespace qdiv
{

// (a;q)_N = (1 - a)(1 - aq)...(1 - aq^(N-1)) as an exact Laurent polynomial.
inline QLaurentSeries pochhammer_exact(const QMonomial &a, std::int64_t n)
{
    if (n < 0) {
        throw std::invalid_argument("pochhammer length must be >= 0");
    }
    QLaurentSeries r = QLaurentSeries::constant(Rational{1});
    for (std::int64_t j = 0; j < n; ++j) {
        if (a.vanishes_at(j)) {
            return QLaurentSeries::exact_zero();
        }
        r = mul_binomial(r, a.c, a.s + j);
    }
    return r;
}

// (a;q)_N windowed to prec. Factors with non-positive exponent are multiplied
// exactly first; the remaining ones only need the window shifted by that
// part's valuation, and factors lying wholly above it are skipped.
inline QLaurentSeries pochhammer(const QMonomial &a, std::int64_t n, std::int64_t prec)
{
    if (n < 0) {
        throw std::invalid_argument("pochhammer length must be >= 0");
    }
    QLaurentSeries low = QLaurentSeries::constant(Rational{1});
    for (std::int64_t j = 0; j < n && a.s + j <= 0; ++j) {
        if (a.vanishes_at(j)) {
            return QLaurentSeries::exact_zero();
        }
        low = mul_binomial(low, a.c, a.s + j);
    }
    std::int64_t inner = prec - low.val();
    QLaurentSeries high = truncate(QLaurentSeries::constant(Rational{1}), inner);
    for (std::int64_t j = std::max<std::int64_t>(0, 1 - a.s); j < n; ++j) {
        std::int64_t e = a.s + j;
        if (e > inner) {
            break;
        }
        high = mul_binomial(high, a.c, e);
    }
    return truncate(mul(low, high), prec);
}

// 1/(a;q)_N windowed to prec.
inline QLaurentSeries inverse_pochhammer(const QMonomial &a, std::int64_t n, std::int64_t prec)
{
    QLaurentSeries r = truncate(QLaurentSeries::constant(Rational{1}), prec);
    for (std::int64_t j = 0; j < n; ++j) {
        if (a.vanishes_at(j)) {
            throw pole_at_constant("(" + to_string(a) + ";q)_" + std::to_string(n) + " has the factor 0");
        }
        r = div_binomial(r, a.c, a.s + j);
    }
    return truncate(r, prec);
}

namespace detail
{

// Exact quotient of a polynomial by 1 - q^e (e > 0); the division must be exact.
inline QLaurentSeries divide_exact_by_binomial(const QLaurentSeries &a, std::int64_t e)
{
    if (a.is_zero()) {
        return a;
    }
    std::int64_t lo = a.val();
    std::int64_t hi = a.top() - e;
    if (hi < lo) {
        throw std::logic_error("polynomial not divisible by 1 - q^" + std::to_string(e));
    }
    std::vector<Rational> b(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t t = lo; t <= hi; ++t) {
        Rational v = a.raw(t);
        if (t - e >= lo) {
            v += b[static_cast<std::size_t>(t - e - lo)];
        }
        b[static_cast<std::size_t>(t - lo)] = v;
    }
    QLaurentSeries quotient = QLaurentSeries::exact_polynomial(lo, std::move(b));
    if (!(mul_binomial(quotient, Rational{1}, e) == a)) {
        throw std::logic_error("polynomial not divisible by 1 - q^" + std::to_string(e));
    }
    return quotient;
}

} // namespace detail

// Gaussian binomial [n k] as an exact polynomial; zero unless 0 <= k <= n.
inline QLaurentSeries qbinomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || n < 0 || k > n) {
        return QLaurentSeries::exact_zero();
    }
    k = std::min(k, n - k);
    // [n k] = prod_{j=1}^{k} (1 - q^(n-k+j)) / (1 - q^j)
    QLaurentSeries r = QLaurentSeries::constant(Rational{1});
    for (std::int64_t j = 1; j <= k; ++j) {
        r = mul_binomial(r, Rational{1}, n - k + j);
        r = detail::divide_exact_by_binomial(r, j);
    }
    return r;
}

// a/(1 - a) windowed to prec, keeping the full window for any exponent of a.
inline QLaurentSeries lambert_term(const QMonomial &a, std::int64_t prec)
{
    if (a.s > 0) {
        return div_binomial(QLaurentSeries::from_monomial(a, prec), a.c, a.s);
    }
    if (a.s == 0) {
        if (a.c == 1) {
            throw pole_at_constant("q^0/(1 - q^0) has a pole");
        }
        return truncate(QLaurentSeries::constant(a.c / (1 - a.c)), prec);
    }
    // a/(1-a) = -1 + 1/(1-a)
    return add(QLaurentSeries::constant(Rational{-1}), invert_binomial(a.c, a.s, prec));
}

// H_n(q) = sum_{k=1}^{n} q^k/(1 - q^k)
inline QLaurentSeries q_harmonic(std::int64_t n, std::int64_t prec)
{
    if (n < 0) {
        throw std::invalid_argument("q_harmonic needs n >= 0");
    }
    QLaurentSeries acc = QLaurentSeries::zero(prec);
    for (std::int64_t k = 1; k <= n && k <= prec; ++k) {
        acc = add(acc, lambert_term(QMonomial::q_power(k), prec));
    }
    return acc;
}

// sum over k in [k_from, k_to] (k != exclude) of z q^(k-m) / (1 - z q^(k-m)).
// An absent k_to means the formal infinite sum.
inline QLaurentSeries shifted_lambert(const QMonomial &z, std::int64_t m, std::int64_t k_from,
                                      std::optional<std::int64_t> k_to, std::optional<std::int64_t> exclude,
                                      std::int64_t prec)
{
    auto term = [&](std::int64_t k) {
        if (exclude && *exclude == k) {
            return QLaurentSeries::exact_zero();
        }
        if (z.vanishes_at(k - m)) {
            throw pole_in_range(k, "1 - " + to_string(z) + "*q^(k-" + std::to_string(m) + ") vanishes");
        }
        return lambert_term(z.shifted(k - m), prec);
    };
    if (!k_to) {
        return sum_terms(k_from, prec, term);
    }
    // Poles are reported even where the term would fall past the window.
    for (std::int64_t k = k_from; k <= *k_to; ++k) {
        if (!(exclude && *exclude == k) && z.vanishes_at(k - m)) {
            throw pole_in_range(k, "1 - " + to_string(z) + "*q^(k-" + std::to_string(m) + ") vanishes");
        }
    }
    QLaurentSeries acc = QLaurentSeries::zero(prec);
    for (std::int64_t k = k_from; k <= *k_to; ++k) {
        if (z.s + k - m > prec) {
            break;
        }
        acc = add(acc, term(k));
    }
    return acc;
}

enum class ChainKind {
    // level i: q^k / ((1 - z q^(k-i)) (1 - q^k)), with an overall minus sign
    lambert_product,
    // levels 1..m-1: q^k / ((1 - z q^(k-i-1)) (1 - q^k)); the last level is
    // sum_{j<K} z q^(j-m)/(1 - z q^(j-m)) - sum_{j<=K} q^j/(1 - q^j)
    lambert_difference,
};

struct ChainSpec {
    std::int64_t depth = 1;
    // Absent for the formal n -> infinity sum.
    std::optional<std::int64_t> upper;
    ChainKind kind = ChainKind::lambert_product;
};

namespace detail
{

// q^k / ((1 - z q^(k-offset)) (1 - q^k)) * inner
inline QLaurentSeries apply_chain_factor(const QLaurentSeries &inner, const QMonomial &z, std::int64_t k,
                                         std::int64_t offset)
{
    if (z.vanishes_at(k - offset)) {
        throw pole_in_range(k, "1 - " + to_string(z) + "*q^(k-" + std::to_string(offset) + ") vanishes");
    }
    QLaurentSeries t = shift(inner, k);
    t = div_binomial(t, z.c, z.s + k - offset);
    return div_binomial(t, Rational{1}, k);
}

// Running prefix sums of level values: out[K-1] = sum_{k=1}^{K} values[k-1].
inline std::vector<QLaurentSeries> prefix_sums(const std::vector<QLaurentSeries> &values, std::int64_t prec)
{
    std::vector<QLaurentSeries> out;
    out.reserve(values.size());
    QLaurentSeries acc = QLaurentSeries::zero(prec);
    for (const auto &v : values) {
        acc = add(acc, v);
        out.push_back(acc);
    }
    return out;
}

} // namespace detail

// Nested sum over 1 <= k_m <= ... <= k_1 <= n, evaluated from the innermost
// level outward with one prefix-sum array per level: O(depth * n) series
// operations.
//
// For the infinite variant every summand with k_1 = K has valuation >= K, so
// the sum is cut at n = prec. The lambert_difference kind with depth 1 has no
// outer level and is its last-level difference at K = n.
inline QLaurentSeries chain_sum(const ChainSpec &spec, const QMonomial &z, std::int64_t prec)
{
    if (spec.depth < 1) {
        throw std::invalid_argument("chain depth must be >= 1");
    }
    const std::int64_t m = spec.depth;
    if (spec.kind == ChainKind::lambert_difference && m == 1) {
        std::optional<std::int64_t> to;
        if (spec.upper) {
            to = *spec.upper - 1;
        }
        QLaurentSeries zs = shifted_lambert(z, 1, 1, to, std::nullopt, prec);
        QLaurentSeries qs = spec.upper ? q_harmonic(*spec.upper, prec)
                                       : shifted_lambert(QMonomial::q_power(0), 0, 1, std::nullopt, std::nullopt, prec);
        return truncate(sub(zs, qs), prec);
    }
    const std::int64_t n = spec.upper ? *spec.upper : std::max<std::int64_t>(prec, 1);
    if (n < 1) {
        return QLaurentSeries::exact_zero();
    }
    const QLaurentSeries one = truncate(QLaurentSeries::constant(Rational{1}), prec);

    // level[K-1] holds the value of everything inside the current level when
    // that level's upper index is K.
    std::vector<QLaurentSeries> level;
    std::int64_t outer_levels = m;
    if (spec.kind == ChainKind::lambert_product) {
        level.assign(static_cast<std::size_t>(n), one);
    } else {
        outer_levels = m - 1;
        level.reserve(static_cast<std::size_t>(n));
        QLaurentSeries zs = QLaurentSeries::zero(prec);
        QLaurentSeries qs = QLaurentSeries::zero(prec);
        for (std::int64_t k = 1; k <= n; ++k) {
            if (k > 1) {
                if (z.vanishes_at(k - 1 - m)) {
                    throw pole_in_range(k - 1, "1 - " + to_string(z) + "*q^(k-" + std::to_string(m) + ") vanishes");
                }
                zs = add(zs, lambert_term(z.shifted(k - 1 - m), prec));
            }
            qs = add(qs, lambert_term(QMonomial::q_power(k), prec));
            level.push_back(sub(zs, qs));
        }
    }
    const std::int64_t extra = spec.kind == ChainKind::lambert_product ? 0 : 1;
    for (std::int64_t i = outer_levels; i >= 1; --i) {
        std::vector<QLaurentSeries> terms;
        terms.reserve(level.size());
        for (std::int64_t k = 1; k <= n; ++k) {
            terms.push_back(detail::apply_chain_factor(level[static_cast<std::size_t>(k - 1)], z, k, i + extra));
        }
        level = detail::prefix_sums(terms, prec);
    }
    QLaurentSeries total = truncate(level.back(), prec);
    return spec.kind == ChainKind::lambert_product ? neg(total) : total;
}

inline std::int64_t divisor_count(std::int64_t n)
{
    if (n < 1) {
        throw std::invalid_argument("divisor_count needs n >= 1");
    }
    std::int64_t count = 0;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            count += d * d == n ? 1 : 2;
        }
    }
    return count;
}

inline std::int64_t odd_divisor_count(std::int64_t n)
{
    while (n % 2 == 0) {
        n /= 2;
    }
    return divisor_count(n);
}

} // namespace qdiv

#endif
