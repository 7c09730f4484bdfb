#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <qdiv/qobjects.hpp>

using namespace qdiv;

namespace
{

QLaurentSeries series_of(std::int64_t val, std::int64_t prec, std::vector<long> cs)
{
    std::vector<Rational> v;
    for (long c : cs) {
        v.emplace_back(c);
    }
    return QLaurentSeries::from_window(val, prec, v).tightened();
}

QLaurentSeries exact_of(std::int64_t val, std::vector<long> cs)
{
    std::vector<Rational> v;
    for (long c : cs) {
        v.emplace_back(c);
    }
    return QLaurentSeries::exact_polynomial(val, v);
}

std::vector<long> int_poly_mul(const std::vector<long> &a, const std::vector<long> &b)
{
    std::vector<long> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

// Long division of integer polynomials with monic-constant divisor; asserts no remainder.
std::vector<long> int_poly_div(std::vector<long> num, const std::vector<long> &den)
{
    std::vector<long> quo(num.size() - den.size() + 1, 0);
    for (std::size_t i = 0; i < quo.size(); ++i) {
        long q = num[i] / den[0];
        quo[i] = q;
        for (std::size_t j = 0; j < den.size(); ++j) {
            num[i + j] -= q * den[j];
        }
    }
    for (long r : num) {
        EXPECT_EQ(r, 0);
    }
    return quo;
}

std::vector<long> q_factorial_poly(int n)
{
    std::vector<long> p{1};
    for (int j = 1; j <= n; ++j) {
        std::vector<long> f(static_cast<std::size_t>(j) + 1, 0);
        f[0] = 1;
        f[static_cast<std::size_t>(j)] = -1;
        p = int_poly_mul(p, f);
    }
    return p;
}

// 1/(1 - c q^e) through exponent w by inverting the embedded binomial.
QLaurentSeries slow_reciprocal(const Rational &c, std::int64_t e, std::int64_t w)
{
    return invert(truncate(QLaurentSeries::exact_binomial(c, e), w).tightened());
}

QLaurentSeries slow_chain_term(const std::vector<std::int64_t> &ks, const QMonomial &z, ChainKind kind, std::int64_t w)
{
    const auto outer = static_cast<std::int64_t>(ks.size());
    QLaurentSeries t = truncate(QLaurentSeries::constant(Rational{1}), w);
    std::int64_t extra = kind == ChainKind::lambert_product ? 0 : 1;
    for (std::int64_t i = 1; i <= outer; ++i) {
        std::int64_t k = ks[static_cast<std::size_t>(i - 1)];
        if (z.vanishes_at(k - i - extra)) {
            throw pole_in_range(k, "oracle pole");
        }
        t = mul(t, QLaurentSeries::exact_monomial(Rational{1}, k));
        t = mul(t, slow_reciprocal(z.c, z.s + k - i - extra, w));
        t = mul(t, slow_reciprocal(Rational{1}, k, w));
    }
    return t;
}

// Direct enumeration of 1 <= k_m <= ... <= k_1 <= n.
QLaurentSeries naive_chain(std::int64_t m, std::int64_t n, const QMonomial &z, ChainKind kind, std::int64_t w)
{
    QLaurentSeries total = QLaurentSeries::zero(w);
    std::int64_t free_levels = kind == ChainKind::lambert_product ? m : m - 1;
    std::vector<std::int64_t> ks;
    std::function<void(std::int64_t)> rec = [&](std::int64_t bound) {
        if (static_cast<std::int64_t>(ks.size()) == free_levels) {
            QLaurentSeries t = slow_chain_term(ks, z, kind, w);
            if (kind == ChainKind::lambert_difference) {
                std::int64_t top = ks.empty() ? n : ks.back();
                QLaurentSeries diff = QLaurentSeries::zero(w);
                for (std::int64_t j = 1; j <= top - 1; ++j) {
                    if (z.vanishes_at(j - m)) {
                        throw pole_in_range(j, "oracle pole");
                    }
                    auto zj = QLaurentSeries::exact_monomial(z.shifted(j - m));
                    diff = add(diff, mul(zj, slow_reciprocal(z.c, z.s + j - m, w)));
                }
                for (std::int64_t j = 1; j <= top; ++j) {
                    diff = sub(diff, mul(QLaurentSeries::exact_monomial(Rational{1}, j), slow_reciprocal(Rational{1}, j, w)));
                }
                t = mul(t, diff);
            }
            total = add(total, t);
            return;
        }
        for (std::int64_t k = 1; k <= bound; ++k) {
            ks.push_back(k);
            rec(k);
            ks.pop_back();
        }
    };
    rec(n);
    return kind == ChainKind::lambert_product ? neg(total) : total;
}

} // namespace

TEST(Pochhammer, QThree)
{
    auto expected = q_factorial_poly(3);
    auto r = pochhammer(QMonomial::q_power(1), 3, 20);
    EXPECT_EQ(r, truncate(exact_of(0, expected), 20));
    EXPECT_EQ(pochhammer_exact(QMonomial::q_power(1), 3), exact_of(0, expected));
}

TEST(Pochhammer, EmptyProduct)
{
    EXPECT_EQ(pochhammer(QMonomial{make_rational(-7, 3), 4}, 0, 6), truncate(QLaurentSeries::constant(Rational{1}), 6));
}

TEST(Pochhammer, NegativeExponents)
{
    // (1 - q^-2)(1 - q^-1) = q^-3 - q^-2 - q^-1 + 1
    auto r = pochhammer(QMonomial::q_power(-2), 2, 5);
    EXPECT_EQ(r.val(), -3);
    EXPECT_EQ(r, series_of(-3, 5, {1, -1, -1, 1}));
}

TEST(Pochhammer, ZeroFactorGivesZero)
{
    EXPECT_TRUE(pochhammer(QMonomial::q_power(-2), 4, 10).is_zero());
}

TEST(Pochhammer, WindowedMatchesExactWithShortCircuit)
{
    for (auto a : {QMonomial{Rational{3}, -4}, QMonomial{make_rational(-1, 2), 1}, QMonomial{Rational{2}, 0}}) {
        for (std::int64_t n : {1, 5, 12, 40}) {
            for (std::int64_t prec : {-3, 0, 7, 25}) {
                auto exact = pochhammer_exact(a, n);
                auto windowed = pochhammer(a, n, prec);
                EXPECT_EQ(windowed.prec(), prec);
                EXPECT_EQ(windowed, truncate(exact, prec)) << to_string(a) << " n=" << n << " prec=" << prec;
            }
        }
    }
}

TEST(QBinomial, FourTwo)
{
    auto expected = int_poly_div(q_factorial_poly(4), int_poly_mul(q_factorial_poly(2), q_factorial_poly(2)));
    EXPECT_EQ(qbinomial(4, 2), exact_of(0, expected));
    EXPECT_EQ(qbinomial(4, 2), exact_of(0, {1, 1, 2, 1, 1}));
}

TEST(QBinomial, EdgeCases)
{
    for (int n = 0; n <= 6; ++n) {
        EXPECT_EQ(qbinomial(n, 0), QLaurentSeries::constant(Rational{1}));
        EXPECT_EQ(qbinomial(n, n), QLaurentSeries::constant(Rational{1}));
    }
    EXPECT_TRUE(qbinomial(3, 5).is_zero());
    EXPECT_TRUE(qbinomial(3, -1).is_zero());
    EXPECT_TRUE(qbinomial(3, 5).is_exact());
}

TEST(QBinomial, PascalRecurrence)
{
    for (std::int64_t n = 1; n <= 12; ++n) {
        for (std::int64_t k = 0; k <= n; ++k) {
            auto rhs = add(qbinomial(n - 1, k - 1), shift(qbinomial(n - 1, k), k));
            EXPECT_EQ(qbinomial(n, k), rhs) << n << "," << k;
        }
    }
}

TEST(QBinomial, SignRelation)
{
    // (q;q)_n = (-1)^m q^(m(m+1)/2) [n m] (q^-m;q)_m (q;q)_(n-m)
    for (std::int64_t n = 0; n <= 8; ++n) {
        for (std::int64_t m = 0; m <= n; ++m) {
            auto lhs = pochhammer_exact(QMonomial::q_power(1), n);
            Rational sign = m % 2 == 0 ? Rational{1} : Rational{-1};
            auto rhs = mul(QLaurentSeries::exact_monomial(sign, m * (m + 1) / 2), qbinomial(n, m));
            rhs = mul(rhs, pochhammer_exact(QMonomial::q_power(-m), m));
            rhs = mul(rhs, pochhammer_exact(QMonomial::q_power(1), n - m));
            EXPECT_EQ(lhs, rhs) << n << "," << m;
        }
    }
}

TEST(QHarmonic, Examples)
{
    EXPECT_TRUE(q_harmonic(0, 8).is_zero());
    EXPECT_EQ(q_harmonic(2, 5), series_of(1, 5, {1, 2, 1, 2, 1}));
    auto infinite = shifted_lambert(QMonomial::q_power(0), 0, 1, std::nullopt, std::nullopt, 10);
    EXPECT_EQ(infinite.coeff(6), 4);
}

TEST(QHarmonic, BoundedDivisorCounts)
{
    for (std::int64_t n = 0; n <= 10; ++n) {
        auto h = q_harmonic(n, 60);
        for (std::int64_t j = 1; j <= 60; ++j) {
            std::int64_t count = 0;
            for (std::int64_t d = 1; d <= std::min(n, j); ++d) {
                count += j % d == 0 ? 1 : 0;
            }
            ASSERT_EQ(h.coeff(j), count) << "n=" << n << " j=" << j;
        }
    }
}

TEST(ShiftedLambert, SingleTerm)
{
    auto r = shifted_lambert(QMonomial::q_power(1), 0, 1, 1, std::nullopt, 4);
    EXPECT_EQ(r, series_of(2, 4, {1, 0, 1}));
}

TEST(ShiftedLambert, PoleIsReported)
{
    try {
        shifted_lambert(QMonomial::q_power(0), 1, 0, 3, std::nullopt, 6);
        FAIL() << "expected pole_in_range";
    } catch (const pole_in_range &e) {
        EXPECT_EQ(e.index(), 1);
    }
    EXPECT_NO_THROW(shifted_lambert(QMonomial::q_power(0), 1, 0, 3, 1, 6));
}

TEST(ShiftedLambert, InfiniteMinusQ)
{
    // -q/(1+q) - q^2/(1+q^2) - q^3/(1+q^3) - ... = -q + 0q^2 - 2q^3 + O(q^4)
    auto r = shifted_lambert(QMonomial{Rational{-1}, 1}, 0, 0, std::nullopt, std::nullopt, 3);
    EXPECT_EQ(r, series_of(1, 3, {-1, 0, -2}));
}

TEST(LabRelation, PartialFractionStep)
{
    // z q^(k-1)/(1 - z q^(k-1)) - q^k/(1 - q^k) = -q^k (1 - z q^-1) / ((1 - z q^(k-1))(1 - q^k))
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5), shift_d(-2, 3), kd(1, 6);
    int checked = 0;
    while (checked < 20) {
        int c = num(rng);
        if (c == 0) {
            continue;
        }
        QMonomial z{make_rational(c, den(rng)), shift_d(rng)};
        std::int64_t k = kd(rng);
        if (z.vanishes_at(k - 1)) {
            continue;
        }
        const std::int64_t prec = 40;
        auto lhs = sub(lambert_term(z.shifted(k - 1), prec + 10), lambert_term(QMonomial::q_power(k), prec + 10));
        auto rhs = QLaurentSeries::exact_monomial(Rational{-1}, k);
        rhs = mul(rhs, QLaurentSeries::exact_binomial(z.c, z.s - 1));
        rhs = mul(rhs, slow_reciprocal(z.c, z.s + k - 1, prec + 10));
        rhs = mul(rhs, slow_reciprocal(Rational{1}, k, prec + 10));
        auto verdict = equal_to_precision(truncate(lhs, prec), truncate(rhs, prec));
        EXPECT_TRUE(verdict.equal()) << to_string(z) << " k=" << k;
        ++checked;
    }
}

TEST(ChainSum, ProductKindSingleTerm)
{
    // -q/((1 - 2)(1 - q)) = q/(1 - q)
    ChainSpec spec{1, 1, ChainKind::lambert_product};
    auto r = chain_sum(spec, QMonomial{Rational{2}, 0}, 8);
    EXPECT_EQ(r, series_of(1, 8, {1, 1, 1, 1, 1, 1, 1, 1}));
}

TEST(ChainSum, ProductKindBaseCase)
{
    // n = 1, depth 2: -q^2 / ((z q^-1;q)_2 (1 - q)^2)
    QMonomial z{Rational{3}, 2};
    const std::int64_t prec = 25;
    auto r = chain_sum(ChainSpec{2, 1, ChainKind::lambert_product}, z, prec);
    auto expected = QLaurentSeries::exact_monomial(Rational{-1}, 2);
    expected = mul(expected, slow_reciprocal(z.c, z.s - 1, prec + 10));
    expected = mul(expected, slow_reciprocal(z.c, z.s, prec + 10));
    expected = mul(expected, slow_reciprocal(Rational{1}, 1, prec + 10));
    expected = mul(expected, slow_reciprocal(Rational{1}, 1, prec + 10));
    EXPECT_TRUE(equal_to_precision(r, truncate(expected, prec)).equal());
}

TEST(ChainSum, DifferenceKindDepthOne)
{
    // z = q, n = 2: q/(1-q) - q/(1-q) - q^2/(1-q^2) = -q^2 - q^4 - q^6 - q^8
    auto r = chain_sum(ChainSpec{1, 2, ChainKind::lambert_difference}, QMonomial::q_power(1), 8);
    EXPECT_EQ(r, series_of(2, 8, {-1, 0, -1, 0, -1, 0, -1}));
}

TEST(ChainSum, DynamicProgrammingMatchesEnumeration)
{
    const std::int64_t prec = 25;
    const std::int64_t w = prec + 20;
    std::vector<QMonomial> zs{{Rational{2}, 0}, {make_rational(1, 2), 0}, {Rational{-1}, 1}, {Rational{1}, 2}};
    for (auto kind : {ChainKind::lambert_product, ChainKind::lambert_difference}) {
        for (std::int64_t m = 1; m <= 3; ++m) {
            for (std::int64_t n = 1; n <= 4; ++n) {
                for (const auto &z : zs) {
                    std::optional<QLaurentSeries> oracle;
                    try {
                        oracle = naive_chain(m, n, z, kind, w);
                    } catch (const pole_in_range &) {
                    }
                    if (!oracle) {
                        EXPECT_THROW(chain_sum(ChainSpec{m, n, kind}, z, prec), pole_in_range);
                        continue;
                    }
                    auto dp = chain_sum(ChainSpec{m, n, kind}, z, prec);
                    EXPECT_EQ(dp.prec(), prec);
                    EXPECT_TRUE(equal_to_precision(dp, truncate(*oracle, prec)).equal())
                        << "kind=" << static_cast<int>(kind) << " m=" << m << " n=" << n << " z=" << to_string(z);
                }
            }
        }
    }
}

TEST(ChainSum, InfiniteUpperBoundStabilises)
{
    QMonomial z{Rational{-1}, 1};
    for (auto kind : {ChainKind::lambert_product, ChainKind::lambert_difference}) {
        for (std::int64_t m = 1; m <= 3; ++m) {
            auto inf = chain_sum(ChainSpec{m, std::nullopt, kind}, z, 15);
            auto finite = chain_sum(ChainSpec{m, 40, kind}, z, 15);
            EXPECT_EQ(inf, finite) << "m=" << m;
        }
    }
}

TEST(DivisorCount, Examples)
{
    EXPECT_EQ(divisor_count(1), 1);
    EXPECT_EQ(divisor_count(6), 4);
    EXPECT_EQ(divisor_count(36), 9);
    EXPECT_EQ(odd_divisor_count(6), 2);
    EXPECT_EQ(odd_divisor_count(1), 1);
}
