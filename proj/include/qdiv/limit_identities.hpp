#ifndef QDIV_LIMIT_IDENTITIES_HPP
#define QDIV_LIMIT_IDENTITIES_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <qdiv/errors.hpp>
#include <qdiv/rational.hpp>

// The q -> 1 shadows of the series identities, checked in exact rational
// arithmetic. Each check evaluates both sides and reports them; a parameter
// that makes a denominator vanish raises pole_at_x.
namespace qdiv::limits
{

struct RationalCheck {
    Rational lhs;
    Rational rhs;

    bool holds() const
    {
        return lhs == rhs;
    }
};

inline Rational harmonic(std::int64_t n)
{
    if (n < 0) {
        throw std::invalid_argument("harmonic needs n >= 0");
    }
    Rational h{0};
    for (std::int64_t k = 1; k <= n; ++k) {
        h += make_rational(1, k);
    }
    return h;
}

// (x)_N = x (x+1) ... (x+N-1)
inline Rational rising_factorial(const Rational &x, std::int64_t n)
{
    if (n < 0) {
        throw std::invalid_argument("rising factorial needs N >= 0");
    }
    Rational r{1};
    for (std::int64_t j = 0; j < n; ++j) {
        r *= x + j;
    }
    return r;
}

// Sum over 1 <= k_depth <= ... <= k_1 <= n of
//   prod_i factor(i, k_i) * inner(k_depth),
// by one prefix-sum pass per level. With depth 0 the value is inner(n).
inline Rational chain_sum(std::int64_t depth, std::int64_t n,
                          const std::function<Rational(std::int64_t, std::int64_t)> &factor,
                          const std::function<Rational(std::int64_t)> &inner)
{
    if (depth == 0) {
        return inner(n);
    }
    // level[K-1]: value of the levels below, given the current upper index K.
    std::vector<Rational> level(static_cast<std::size_t>(n));
    for (std::int64_t k = 1; k <= n; ++k) {
        level[static_cast<std::size_t>(k - 1)] = inner(k);
    }
    for (std::int64_t i = depth; i >= 1; --i) {
        Rational acc{0};
        for (std::int64_t k = 1; k <= n; ++k) {
            acc += factor(i, k) * level[static_cast<std::size_t>(k - 1)];
            level[static_cast<std::size_t>(k - 1)] = acc;
        }
    }
    return n >= 1 ? level.back() : Rational{0};
}

namespace detail
{

inline void require_nonzero(const Rational &v, const std::string &what)
{
    if (v == 0) {
        throw pole_at_x(what + " vanishes");
    }
}

inline void require_positive(std::int64_t v, const char *name)
{
    if (v < 1) {
        throw std::invalid_argument(std::string{name} + " must be >= 1");
    }
}

// Every factor x + t of (x + lo)_(count) must be nonzero.
inline void require_rising_nonzero(const Rational &x, std::int64_t lo, std::int64_t count, const std::string &what)
{
    for (std::int64_t j = 0; j < count; ++j) {
        if (x + lo + j == 0) {
            throw pole_at_x(what + " contains the factor 0");
        }
    }
}

} // namespace detail

// sum_{k=1}^{n} (-1)^(k-1) C(n,k)/k = H_n
inline RationalCheck check_trigo(std::int64_t n)
{
    detail::require_positive(n, "n");
    RationalCheck out;
    for (std::int64_t k = 1; k <= n; ++k) {
        Rational t = binomial(n, k) / k;
        out.lhs += k % 2 == 1 ? t : Rational{-t};
    }
    out.rhs = harmonic(n);
    return out;
}

// sum_k (-1)^(k-1) C(n,k)/k^m = sum over chains of 1/(k_1 ... k_m)
inline RationalCheck check_dilcher_noq(std::int64_t m, std::int64_t n)
{
    detail::require_positive(m, "m");
    detail::require_positive(n, "n");
    RationalCheck out;
    for (std::int64_t k = 1; k <= n; ++k) {
        Rational t = binomial(n, k) / pow(Rational{k}, m);
        out.lhs += k % 2 == 1 ? t : Rational{-t};
    }
    out.rhs = chain_sum(
        m, n, [](std::int64_t, std::int64_t k) -> Rational { return make_rational(1, k); },
        [](std::int64_t) -> Rational { return Rational{1}; });
    return out;
}

// sum_k C(n,k) (m-x)_k (x)_(n-k) / ((x-m)_(m+n) k^m)
//   = - sum over chains of 1/(k_1...k_m (x+k_1-1)...(x+k_m-m))
inline RationalCheck check_multi_noq(std::int64_t m, std::int64_t n, const Rational &x)
{
    detail::require_positive(m, "m");
    detail::require_positive(n, "n");
    detail::require_rising_nonzero(x, -m, m + n, "(x-m)_(m+n)");
    for (std::int64_t i = 1; i <= m; ++i) {
        for (std::int64_t k = 1; k <= n; ++k) {
            detail::require_nonzero(x + k - i, "x+k-i at k=" + std::to_string(k) + ", i=" + std::to_string(i));
        }
    }
    RationalCheck out;
    Rational den = rising_factorial(x - m, m + n);
    for (std::int64_t k = 1; k <= n; ++k) {
        out.lhs += binomial(n, k) * rising_factorial(m - x, k) * rising_factorial(x, n - k) / (den * pow(Rational{k}, m));
    }
    out.rhs = -chain_sum(
        m, n, [&](std::int64_t i, std::int64_t k) -> Rational { return 1 / (Rational{k} * (x + k - i)); },
        [](std::int64_t) -> Rational { return Rational{1}; });
    return out;
}

// The x -> m limit of check_multi_noq, scaled to integers:
// sum_k C(n,k)(k-1)!(m+n-k-1)!/k^m
//   = sum over chains of (m-1)!(m+n-1)!/(k_1...k_m (k_1+m-1)(k_2+m-2)...k_m)
inline RationalCheck check_multi_noq_xm_limit(std::int64_t m, std::int64_t n)
{
    detail::require_positive(m, "m");
    detail::require_positive(n, "n");
    RationalCheck out;
    for (std::int64_t k = 1; k <= n; ++k) {
        out.lhs += binomial(n, k) * factorial(k - 1) * factorial(m + n - k - 1) / pow(Rational{k}, m);
    }
    Rational scale = factorial(m - 1) * factorial(m + n - 1);
    out.rhs = scale
              * chain_sum(
                  m, n, [&](std::int64_t i, std::int64_t k) -> Rational { return 1 / Rational{k * (k + m - i)}; },
                  [](std::int64_t) -> Rational { return Rational{1}; });
    return out;
}

// sum_k C(n,k) (m-x)_k (x-1)_(n-k) / ((x-m)_(m+n-1) k^m)
//   = sum over 1 <= k_(m-1) <= ... <= k_1 <= n of
//     [sum_{j<k_(m-1)} 1/(x+j-m) - H_(k_(m-1))] / prod_i k_i (x+k_i-i-1)
// With m = 1 there are no outer indices and the bracket is taken at n.
inline RationalCheck check_dilch2_noq(std::int64_t m, std::int64_t n, const Rational &x)
{
    detail::require_positive(m, "m");
    detail::require_positive(n, "n");
    detail::require_rising_nonzero(x, -m, m + n - 1, "(x-m)_(m+n-1)");
    for (std::int64_t i = 1; i <= m - 1; ++i) {
        for (std::int64_t k = 1; k <= n; ++k) {
            detail::require_nonzero(x + k - i - 1, "x+k-i-1 at k=" + std::to_string(k) + ", i=" + std::to_string(i));
        }
    }
    for (std::int64_t j = 1; j <= n - 1; ++j) {
        detail::require_nonzero(x + j - m, "x+j-m at j=" + std::to_string(j));
    }
    RationalCheck out;
    Rational den = rising_factorial(x - m, m + n - 1);
    for (std::int64_t k = 1; k <= n; ++k) {
        out.lhs += binomial(n, k) * rising_factorial(m - x, k) * rising_factorial(x - 1, n - k)
                   / (den * pow(Rational{k}, m));
    }
    // bracket[K-1] for K = 1..n, built incrementally.
    std::vector<Rational> bracket;
    Rational zsum{0};
    for (std::int64_t k = 1; k <= n; ++k) {
        if (k > 1) {
            zsum += 1 / (x + (k - 1) - m);
        }
        bracket.push_back(zsum - harmonic(k));
    }
    out.rhs = chain_sum(
        m - 1, n, [&](std::int64_t i, std::int64_t k) -> Rational { return 1 / (Rational{k} * (x + k - i - 1)); },
        [&](std::int64_t k) -> Rational { return bracket[static_cast<std::size_t>(k - 1)]; });
    return out;
}

// Complete homogeneous symmetric sum h_m(a_1..a_N) against its partial-fraction
// form sum_k a_k^m prod_{j != k} (1 - a_j/a_k)^-1.
inline RationalCheck check_zeng_key(const std::vector<Rational> &a, std::int64_t m)
{
    detail::require_positive(m, "m");
    if (a.empty()) {
        throw std::invalid_argument("zeng_key needs at least one value");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            throw std::invalid_argument("zeng_key values must be nonzero");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (a[i] == a[j]) {
                throw duplicate_values("value " + to_string(a[i]) + " appears twice");
            }
        }
    }
    RationalCheck out;
    // h[j] = h_j of the values seen so far.
    std::vector<Rational> h(static_cast<std::size_t>(m) + 1, Rational{0});
    h[0] = 1;
    for (const auto &v : a) {
        for (std::int64_t j = 1; j <= m; ++j) {
            h[static_cast<std::size_t>(j)] += v * h[static_cast<std::size_t>(j - 1)];
        }
    }
    out.lhs = h.back();
    for (std::size_t k = 0; k < a.size(); ++k) {
        Rational t = pow(a[k], m);
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j != k) {
                t /= 1 - a[j] / a[k];
            }
        }
        out.rhs += t;
    }
    return out;
}

} // namespace qdiv::limits

#endif
