#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <qdiv/catalog.hpp>

using namespace qdiv;

namespace
{

QMonomial mono(std::int64_t num, std::int64_t den, std::int64_t s)
{
    return QMonomial{make_rational(num, den), s};
}

ParamSet nm(std::int64_t n, std::int64_t m)
{
    ParamSet p;
    p.n = n;
    p.m = m;
    return p;
}

// Slow, independent evaluation helpers: exact products, one generic inversion.
QLaurentSeries slow_ratio(const QLaurentSeries &num, const QLaurentSeries &den, std::int64_t w)
{
    std::int64_t v = den.val();
    QLaurentSeries d = truncate(den, v + w + 40);
    QLaurentSeries n = truncate(num, num.val() + w + 40);
    return mul(n, invert(d));
}

QLaurentSeries binom(const QMonomial &a)
{
    return QLaurentSeries::exact_binomial(a.c, a.s);
}

} // namespace

TEST(CatalogListing, HasTwentyEightSortedEntries)
{
    auto list = list_identities();
    ASSERT_EQ(list.size(), 28u);
    std::set<std::string> ids;
    for (const auto &d : list) {
        ids.insert(d.id);
        EXPECT_FALSE(d.anchor.empty()) << d.id;
        EXPECT_EQ(d.group, Group::series);
        if (d.infinite) {
            EXPECT_FALSE(d.valuation_note.empty()) << d.id;
        }
    }
    EXPECT_TRUE(std::is_sorted(list.begin(), list.end(), [](auto &a, auto &b) { return a.id < b.id; }));
    for (const char *id : {"thm1", "thm2", "cor001", "corteel_lovejoy", "qinv002"}) {
        EXPECT_TRUE(ids.count(id)) << id;
    }
    auto again = list_identities();
    ASSERT_EQ(again.size(), list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        EXPECT_EQ(again[i].id, list[i].id);
        EXPECT_EQ(again[i].anchor, list[i].anchor);
    }
}

TEST(CatalogListing, RationalGroup)
{
    auto list = list_rational_checks();
    std::vector<std::string> ids;
    for (const auto &d : list) {
        ids.push_back(d.id);
    }
    EXPECT_EQ(ids, (std::vector<std::string>{"dilch2_noq", "dilcher_noq", "multi_noq", "multi_noq_xm", "trigo",
                                             "zeng_key"}));
}

TEST(ValidateParams, Examples)
{
    ParamSet p;
    p.n = 2;
    p.l = 0;
    p.m = 3;
    p.z = mono(2, 1, 0);
    EXPECT_EQ(validate_params("thm1", p), "m exceeds n");

    ParamSet t;
    t.m = 2;
    t.n = 2;
    t.z = QMonomial::q_power(2);
    auto v = validate_params("thm2", t);
    ASSERT_TRUE(v);
    EXPECT_NE(v->find("contains the factor 0"), std::string::npos);

    ParamSet c;
    c.m = 1;
    c.z = mono(2, 1, 0);
    EXPECT_EQ(validate_params("cor_ourinfty", c), "infinite sum requires s >= 1");

    EXPECT_THROW(validate_params("no_such_identity", c), unknown_identity);
}

TEST(ValidateParams, BindingsMustMatch)
{
    ParamSet p;
    p.n = 3;
    EXPECT_EQ(validate_params("van_hamme", p), std::nullopt);
    p.z = mono(2, 1, 0);
    EXPECT_EQ(validate_params("van_hamme", p), "unexpected parameter z");
    ParamSet q;
    EXPECT_EQ(validate_params("van_hamme", q), "missing parameter n");
    q.n = 0;
    EXPECT_EQ(validate_params("van_hamme", q), "n must be >= 1");
}

TEST(EvaluateSide, VanHammeSingleTerm)
{
    ParamSet p;
    p.n = 1;
    QLaurentSeries lhs = evaluate_side("van_hamme", Side::lhs, p, 6);
    EXPECT_EQ(lhs.prec(), 6);
    for (std::int64_t e = 1; e <= 6; ++e) {
        EXPECT_EQ(lhs.coeff(e), 1);
    }
    EXPECT_EQ(lhs.coeff(0), 0);
}

TEST(EvaluateSide, Thm2FactorsCancel)
{
    ParamSet p;
    p.m = 1;
    p.n = 1;
    p.z = mono(2, 1, 0);
    QLaurentSeries lhs = evaluate_side("thm2", Side::lhs, p, 8);
    QLaurentSeries expect = lambert_term(QMonomial::q_power(1), 8);
    EXPECT_EQ(lhs, expect);
    EXPECT_EQ(evaluate_side("thm2", Side::rhs, p, 8), expect);
}

TEST(EvaluateSide, Cor001SymmetricBracketVanishes)
{
    QLaurentSeries rhs = evaluate_side("cor001", Side::rhs, nm(2, 2), 10);
    EXPECT_TRUE(rhs.is_zero());
}

TEST(EvaluateSide, NegativeExponentsReachTheOrder)
{
    // qinv002 has summands of negative valuation; the window still reaches 30.
    for (std::int64_t n = 0; n <= 4; ++n) {
        for (std::int64_t m = 0; m <= 4; ++m) {
            QLaurentSeries lhs = evaluate_side("qinv002", Side::lhs, nm(n, m), 30);
            EXPECT_EQ(lhs.prec(), 30);
        }
    }
}

TEST(EvaluateSide, UnknownIdentityThrows)
{
    EXPECT_THROW(evaluate_side("nope", Side::lhs, ParamSet{}, 10), unknown_identity);
}

TEST(Verify, SpecExamples)
{
    ParamSet v;
    v.n = 4;
    EXPECT_EQ(verify("van_hamme", v, 20).status, Status::pass);
    EXPECT_EQ(verify("prodinger", nm(3, 3), 20).status, Status::pass);
}

TEST(Verify, Thm2BaseCaseValue)
{
    // n = 1: both sides equal -q^m / ((z q^-(m-1);q)_m (1-q)^m) at depth m.
    for (const QMonomial &z : {mono(3, 1, 2), mono(-1, 1, 1), mono(1, 2, 0)}) {
        for (std::int64_t m = 1; m <= 4; ++m) {
            ParamSet p;
            p.m = m;
            p.n = 1;
            p.z = z;
            auto rep = verify("thm2", p, 25);
            ASSERT_EQ(rep.status, Status::pass) << rep.params;
            QLaurentSeries den = pochhammer_exact(z.shifted(-(m - 1)), m);
            for (std::int64_t j = 0; j < m; ++j) {
                den = mul_binomial(den, Rational{1}, 1);
            }
            QLaurentSeries expect = truncate(neg(slow_ratio(QLaurentSeries::exact_monomial(Rational{1}, m), den, 25)), 25);
            EXPECT_EQ(evaluate_side("thm2", Side::lhs, p, 25), expect) << rep.params;
            EXPECT_EQ(evaluate_side("thm2", Side::rhs, p, 25), expect) << rep.params;
        }
    }
}

TEST(Verify, ViolationsBecomeSkippedRows)
{
    ParamSet p;
    p.m = 2;
    p.n = 2;
    p.z = QMonomial::q_power(2);
    auto rep = verify("thm2", p, 20);
    EXPECT_EQ(rep.status, Status::skipped);
    ASSERT_TRUE(rep.skip_reason);
    EXPECT_FALSE(rep.first_mismatch);
}

TEST(Verify, RationalRows)
{
    ParamSet p;
    p.m = 2;
    p.n = 2;
    p.xr = Rational{2};
    auto rep = verify("multi_noq", p, 30);
    EXPECT_EQ(rep.status, Status::skipped);
    p.xr = make_rational(7, 2);
    EXPECT_EQ(verify("multi_noq", p, 30).status, Status::pass);
    ParamSet z;
    z.m = 3;
    z.a = std::vector<Rational>{Rational{1}, Rational{2}, Rational{3}};
    EXPECT_EQ(verify("zeng_key", z, 30).status, Status::pass);
    z.a = std::vector<Rational>{Rational{1}, Rational{1}};
    EXPECT_EQ(verify("zeng_key", z, 30).status, Status::skipped);
}

TEST(Suite, Thm1GridCoversAdmissibleTriples)
{
    auto suite = default_suite(2);
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> admissible, skipped;
    std::size_t rows = 0;
    for (const auto &e : suite) {
        if (e.id != "thm1") {
            continue;
        }
        ++rows;
        auto key = std::make_tuple(*e.params.n, *e.params.l, *e.params.m);
        auto v = validate_params("thm1", e.params);
        if (!v || v->find("contains the factor 0") != std::string::npos) {
            admissible.insert(key);
        } else {
            skipped.insert(key);
        }
    }
    EXPECT_EQ(rows, 27u * 8u);
    std::size_t expected = 0;
    for (std::int64_t n = 0; n <= 2; ++n) {
        for (std::int64_t l = 0; l <= n; ++l) {
            for (std::int64_t m = 0; m <= n; ++m) {
                EXPECT_TRUE(admissible.count({n, l, m}));
                ++expected;
            }
        }
    }
    EXPECT_EQ(admissible.size(), expected);
    EXPECT_EQ(admissible.size() + skipped.size(), 27u);
}

TEST(Suite, CorteelLovejoyOnceAndGuardedInfiniteRows)
{
    auto suite = default_suite(3);
    EXPECT_EQ(std::count_if(suite.begin(), suite.end(), [](auto &e) { return e.id == "corteel_lovejoy"; }), 1);
    std::size_t guarded = 0;
    for (const auto &e : suite) {
        if (e.id == "cor_ourinfty" && e.params.z->s == 0) {
            auto rep = verify(e.id, e.params, 12);
            EXPECT_EQ(rep.status, Status::skipped);
            EXPECT_EQ(rep.skip_reason, "infinite sum requires s >= 1");
            ++guarded;
        }
    }
    EXPECT_EQ(guarded, 4u * 3u);
}

TEST(Suite, AlternatePointListDiffers)
{
    auto a = point_lists(0), b = point_lists(1), c = point_lists(2);
    EXPECT_FALSE(a.z == b.z);
    EXPECT_TRUE(a.z == c.z);
}

TEST(Properties, Thm1AtLZeroMatchesCorOurdiv)
{
    for (const auto &z : point_lists(0).z) {
        for (std::int64_t n = 0; n <= 4; ++n) {
            for (std::int64_t m = 0; m <= n; ++m) {
                ParamSet a;
                a.n = n;
                a.m = m;
                a.l = 0;
                a.z = z;
                ParamSet b = a;
                b.l.reset();
                if (validate_params("cor_ourdiv", b)) {
                    continue;
                }
                EXPECT_EQ(evaluate_side("thm1", Side::lhs, a, 30), evaluate_side("cor_ourdiv", Side::lhs, b, 30));
                EXPECT_EQ(evaluate_side("thm1", Side::rhs, a, 30), evaluate_side("cor_ourdiv", Side::rhs, b, 30));
            }
        }
    }
}

TEST(Properties, MZeroCollapsesToVanHamme)
{
    for (std::int64_t n = 1; n <= 6; ++n) {
        ParamSet v;
        v.n = n;
        QLaurentSeries factor = neg(truncate(pochhammer_exact(QMonomial::q_power(1), n), 30));
        for (const char *id : {"cor001", "cor002"}) {
            for (Side s : {Side::lhs, Side::rhs}) {
                QLaurentSeries scaled = truncate(mul(evaluate_side(id, s, nm(n, 0), 30), factor), 30);
                EXPECT_EQ(scaled, evaluate_side("van_hamme", s, v, 30)) << id << " n=" << n;
            }
        }
    }
}

TEST(Properties, SwappingMAndNNegates)
{
    for (std::int64_t m = 0; m <= 3; ++m) {
        for (std::int64_t n = 0; n <= 3; ++n) {
            for (const char *id : {"cor001", "cor002", "qinv001", "qinv002"}) {
                for (Side s : {Side::lhs, Side::rhs}) {
                    EXPECT_EQ(evaluate_side(id, s, nm(n, m), 20), neg(evaluate_side(id, s, nm(m, n), 20)));
                }
            }
            for (const auto &z : {mono(2, 1, 0), mono(-1, 1, 1)}) {
                ParamSet a = nm(n, m), b = nm(m, n);
                a.z = b.z = z;
                a.v = b.v = mono(3, 1, 0);
                for (Side s : {Side::lhs, Side::rhs}) {
                    EXPECT_EQ(evaluate_side("thm3", s, a, 20), neg(evaluate_side("thm3", s, b, 20)));
                }
            }
        }
    }
}

TEST(Properties, CorteelLovejoyCoefficients)
{
    QLaurentSeries lhs = evaluate_side("corteel_lovejoy", Side::lhs, ParamSet{}, 60);
    for (std::int64_t n = 1; n <= 60; ++n) {
        std::int64_t odd = 0;
        for (std::int64_t d = 1; d <= n; d += 2) {
            odd += n % d == 0 ? 1 : 0;
        }
        EXPECT_EQ(lhs.coeff(n), -2 * odd) << n;
    }
}

// Independent evaluation of thm1's left side: exact numerators, one generic
// series inversion of the full denominator.
TEST(Oracles, Thm1LhsByGenericInversion)
{
    for (const auto &z : {mono(2, 1, 0), mono(-1, 1, 1), mono(1, 1, 2), mono(-1, 2, 1)}) {
        for (std::int64_t n = 1; n <= 3; ++n) {
            for (std::int64_t l = 0; l <= n; ++l) {
                for (std::int64_t m = 0; m <= n; ++m) {
                    ParamSet p;
                    p.n = n;
                    p.l = l;
                    p.m = m;
                    p.z = z;
                    QLaurentSeries total = QLaurentSeries::zero(20);
                    for (std::int64_t k = 0; k <= n; ++k) {
                        if (k == m) {
                            continue;
                        }
                        QLaurentSeries num = qbinomial(n, k) * pochhammer_exact(QMonomial::q_power(1) / z, k)
                                             * pochhammer_exact(z.shifted(-l), n - k)
                                             * QLaurentSeries::exact_monomial(z.pow(k));
                        if (num.is_zero()) {
                            continue;
                        }
                        total = add(total, slow_ratio(num, binom(QMonomial::q_power(k - m)), 20));
                    }
                    EXPECT_EQ(evaluate_side("thm1", Side::lhs, p, 20), truncate(total, 20)) << render(p);
                }
            }
        }
    }
}

TEST(Oracles, LagrangeRhsByGenericInversion)
{
    for (const auto &x : {mono(2, 1, 0), mono(1, 1, 1), mono(-1, 1, 1)}) {
        for (const auto &z : {mono(1, 2, 0), mono(2, 1, 1)}) {
            for (std::int64_t n = 0; n <= 3; ++n) {
                for (std::int64_t l = 0; l <= n; ++l) {
                    ParamSet p;
                    p.n = n;
                    p.l = l;
                    p.x = x;
                    p.z = z;
                    if (validate_params("lagrange_lemma", p)) {
                        continue;
                    }
                    QLaurentSeries num = pochhammer_exact(QMonomial::q_power(1), n) * pochhammer_exact(x * z, n - l)
                                         * pochhammer_exact(z.shifted(-l), l);
                    QLaurentSeries expect = truncate(slow_ratio(num, pochhammer_exact(x, n + 1), 20), 20);
                    EXPECT_EQ(evaluate_side("lagrange_lemma", Side::rhs, p, 20), expect) << render(p);
                }
            }
        }
    }
}

// Two tempting variants of the implemented right-hand sides are refuted: the
// prodinger summand with q^k in place of q^(k-m), and cor1 without its sign.
TEST(RefutedVariants, ProdingerWithQToTheKFails)
{
    const std::int64_t n = 1, m = 1, w = 12;
    QLaurentSeries variant = QLaurentSeries::exact_zero();
    for (std::int64_t k = 0; k <= n; ++k) {
        if (k != m) {
            variant = add(variant, slow_ratio(QLaurentSeries::exact_monomial(Rational{1}, k),
                                              binom(QMonomial::q_power(k - m)), w));
        }
    }
    variant = truncate(mul(variant, QLaurentSeries::exact_monomial(Rational{-1}, 1)), w);
    QLaurentSeries lhs = evaluate_side("prodinger", Side::lhs, nm(n, m), w);
    EXPECT_FALSE(equal_to_precision(lhs, variant).equal());
    EXPECT_TRUE(equal_to_precision(lhs, evaluate_side("prodinger", Side::rhs, nm(n, m), w)).equal());
}

TEST(RefutedVariants, Cor1WithoutLeadingMinusIsNegated)
{
    for (const auto &z : point_lists(0).z) {
        for (std::int64_t n = 1; n <= 3; ++n) {
            ParamSet p;
            p.n = n;
            p.z = z;
            if (validate_params("cor1", p)) {
                continue;
            }
            QLaurentSeries sum = QLaurentSeries::zero(30);
            for (std::int64_t k = 1; k <= n; ++k) {
                QLaurentSeries den = binom(z.shifted(k - 1)) * binom(QMonomial::q_power(k));
                sum = add(sum, slow_ratio(QLaurentSeries::exact_monomial(Rational{1}, k), den, 30));
            }
            QLaurentSeries variant = truncate(mul(sum, pochhammer_exact(z.shifted(-1), n + 1)), 20);
            QLaurentSeries lhs = evaluate_side("cor1", Side::lhs, p, 20);
            EXPECT_EQ(lhs, neg(variant)) << render(p);
        }
    }
}
