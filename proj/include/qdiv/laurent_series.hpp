#ifndef QDIV_LAURENT_SERIES_HPP
#define QDIV_LAURENT_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <qdiv/errors.hpp>
#include <qdiv/monomial.hpp>
#include <qdiv/rational.hpp>

namespace qdiv
{

// Truncated formal Laurent series in q over the rationals.
//
// A windowed series knows its coefficients exactly for every exponent e with
// e <= prec; nothing is known beyond prec. val is a lower bound on the true
// valuation, and val == prec + 1 encodes "zero to known precision". Results of
// arithmetic are always tightened, so for them val is the exact valuation
// whenever a nonzero coefficient lies in the window.
//
// An exact series is a Laurent polynomial: every coefficient is known and the
// ones past the last stored exponent are zero. q-binomials and finite products
// live there so that multiplying by them does not shorten a window.
//
// Storage is dense over [val, prec] (or [val, degree] when exact).
class QLaurentSeries
{
public:
    static constexpr std::int64_t exact_prec = std::numeric_limits<std::int64_t>::max();

    // The exact zero polynomial.
    QLaurentSeries() = default;

    static QLaurentSeries zero(std::int64_t prec)
    {
        QLaurentSeries r;
        r.exact_ = false;
        r.prec_ = prec;
        r.val_ = prec + 1;
        return r;
    }

    static QLaurentSeries exact_zero()
    {
        return QLaurentSeries{};
    }

    static QLaurentSeries from_monomial(const QMonomial &m, std::int64_t prec)
    {
        QLaurentSeries r = zero(prec);
        if (m.s <= prec) {
            r.val_ = m.s;
            r.coeffs_.assign(static_cast<std::size_t>(prec - m.s + 1), Rational{0});
            r.coeffs_[0] = m.c;
        }
        return r;
    }

    static QLaurentSeries exact_monomial(const Rational &c, std::int64_t s)
    {
        QLaurentSeries r;
        if (c != 0) {
            r.val_ = s;
            r.coeffs_.push_back(c);
        }
        return r;
    }

    static QLaurentSeries exact_monomial(const QMonomial &m)
    {
        return exact_monomial(m.c, m.s);
    }

    static QLaurentSeries constant(const Rational &c)
    {
        return exact_monomial(c, 0);
    }

    // 1 - c q^e as an exact polynomial.
    static QLaurentSeries exact_binomial(const Rational &c, std::int64_t e)
    {
        QLaurentSeries r;
        if (e == 0) {
            return constant(1 - c);
        }
        std::int64_t lo = std::min<std::int64_t>(0, e);
        std::int64_t hi = std::max<std::int64_t>(0, e);
        r.val_ = lo;
        r.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Rational{0});
        r.coeffs_[static_cast<std::size_t>(-lo)] = 1;
        r.coeffs_[static_cast<std::size_t>(e - lo)] -= c;
        r.normalize();
        return r;
    }

    // Coefficients for exponents val, val+1, ...; the window ends at prec.
    // val is taken as given (a lower bound) and is not tightened; entries past
    // prec are dropped.
    static QLaurentSeries from_window(std::int64_t val, std::int64_t prec, std::vector<Rational> coeffs)
    {
        if (val > prec + 1) {
            throw std::invalid_argument("window requires val <= prec + 1");
        }
        QLaurentSeries r = zero(prec);
        r.val_ = val;
        coeffs.resize(static_cast<std::size_t>(prec - val + 1), Rational{0});
        r.coeffs_ = std::move(coeffs);
        return r;
    }

    static QLaurentSeries exact_polynomial(std::int64_t val, std::vector<Rational> coeffs)
    {
        QLaurentSeries r;
        r.val_ = val;
        r.coeffs_ = std::move(coeffs);
        r.normalize();
        return r;
    }

    std::int64_t val() const noexcept
    {
        return val_;
    }

    // exact_prec for exact series.
    std::int64_t prec() const noexcept
    {
        return exact_ ? exact_prec : prec_;
    }

    bool is_exact() const noexcept
    {
        return exact_;
    }

    // No nonzero coefficient is stored (zero to precision, or exactly zero).
    bool is_zero() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational &c) { return c == 0; });
    }

    // Highest exponent that has storage; for exact series the degree.
    std::int64_t top() const noexcept
    {
        return val_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
    }

    Rational coeff(std::int64_t e) const
    {
        if (!exact_ && e > prec_) {
            throw out_of_window("coefficient of q^" + std::to_string(e) + " lies past precision "
                                + std::to_string(prec_));
        }
        return raw(e);
    }

    // Coefficient without the window check (zero outside the storage).
    const Rational &raw(std::int64_t e) const
    {
        static const Rational zero_value{0};
        if (e < val_ || e > top()) {
            return zero_value;
        }
        return coeffs_[static_cast<std::size_t>(e - val_)];
    }

    // Moves val up past leading zero coefficients. For a windowed series with
    // nothing nonzero the result has val == prec + 1.
    QLaurentSeries tightened() const
    {
        QLaurentSeries r = *this;
        r.normalize();
        return r;
    }

    friend bool operator==(const QLaurentSeries &a, const QLaurentSeries &b)
    {
        QLaurentSeries x = a.tightened();
        QLaurentSeries y = b.tightened();
        return x.exact_ == y.exact_ && x.prec() == y.prec() && x.val_ == y.val_ && x.coeffs_ == y.coeffs_;
    }

private:
    friend class series_builder;

    void normalize()
    {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) {
            ++lead;
        }
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            val_ = exact_ ? 0 : prec_ + 1;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            val_ += static_cast<std::int64_t>(lead);
        }
        if (exact_) {
            while (!coeffs_.empty() && coeffs_.back() == 0) {
                coeffs_.pop_back();
            }
        }
    }

    bool exact_ = true;
    std::int64_t val_ = 0;
    std::int64_t prec_ = 0;
    std::vector<Rational> coeffs_;
};

// Internal access for the arithmetic below.
class series_builder
{
public:
    // Window [val, prec] filled with zeros; exact when prec == exact_prec and
    // then top bounds the storage.
    static QLaurentSeries windowed(std::int64_t val, std::int64_t prec)
    {
        QLaurentSeries r = QLaurentSeries::zero(prec);
        if (val <= prec) {
            r.val_ = val;
            r.coeffs_.assign(static_cast<std::size_t>(prec - val + 1), Rational{0});
        }
        return r;
    }

    static QLaurentSeries exact(std::int64_t val, std::int64_t top)
    {
        QLaurentSeries r;
        if (val <= top) {
            r.val_ = val;
            r.coeffs_.assign(static_cast<std::size_t>(top - val + 1), Rational{0});
        }
        return r;
    }

    static Rational &at(QLaurentSeries &s, std::int64_t e)
    {
        return s.coeffs_[static_cast<std::size_t>(e - s.val_)];
    }

    static std::vector<Rational> &coeffs(QLaurentSeries &s)
    {
        return s.coeffs_;
    }

    static const std::vector<Rational> &coeffs(const QLaurentSeries &s)
    {
        return s.coeffs_;
    }

    static void finish(QLaurentSeries &s)
    {
        s.normalize();
    }
};

namespace detail
{

inline std::int64_t min_prec(const QLaurentSeries &a, const QLaurentSeries &b)
{
    return std::min(a.prec(), b.prec());
}

// Empty storage when the window is empty.
inline QLaurentSeries blank(bool exact, std::int64_t lo, std::int64_t hi)
{
    return exact ? series_builder::exact(lo, hi) : series_builder::windowed(lo, hi);
}

} // namespace detail

// Restricts the window to exponents <= prec.
inline QLaurentSeries truncate(const QLaurentSeries &a, std::int64_t prec)
{
    if (prec > a.prec()) {
        throw out_of_window("cannot widen a window from " + std::to_string(a.prec()) + " to "
                            + std::to_string(prec));
    }
    QLaurentSeries r = series_builder::windowed(std::min(a.val(), prec + 1), prec);
    for (std::int64_t e = std::max(a.val(), r.val()); e <= std::min(prec, a.top()); ++e) {
        series_builder::at(r, e) = a.raw(e);
    }
    series_builder::finish(r);
    return r;
}

inline QLaurentSeries add(const QLaurentSeries &a, const QLaurentSeries &b)
{
    bool exact = a.is_exact() && b.is_exact();
    std::int64_t prec = detail::min_prec(a, b);
    std::int64_t lo = std::min(a.val(), b.val());
    std::int64_t hi = exact ? std::max(a.top(), b.top()) : prec;
    QLaurentSeries r = detail::blank(exact, std::min(lo, hi + 1), hi);
    for (const QLaurentSeries *s : {&a, &b}) {
        std::int64_t end = std::min(hi, s->top());
        for (std::int64_t e = std::max(s->val(), r.val()); e <= end; ++e) {
            series_builder::at(r, e) += s->raw(e);
        }
    }
    series_builder::finish(r);
    return r;
}


inline QLaurentSeries scale(const QLaurentSeries &a, const Rational &r)
{
    QLaurentSeries out = a;
    for (auto &c : series_builder::coeffs(out)) {
        c *= r;
    }
    series_builder::finish(out);
    return out;
}

inline QLaurentSeries neg(const QLaurentSeries &a)
{
    return scale(a, Rational{-1});
}

inline QLaurentSeries sub(const QLaurentSeries &a, const QLaurentSeries &b)
{
    return add(a, neg(b));
}

// a * q^t
inline QLaurentSeries shift(const QLaurentSeries &a, std::int64_t t)
{
    if (a.is_exact()) {
        if (a.is_zero()) {
            return a;
        }
        return QLaurentSeries::exact_polynomial(a.val() + t, series_builder::coeffs(a));
    }
    return QLaurentSeries::from_window(a.val() + t, a.prec() + t, series_builder::coeffs(a)).tightened();
}

inline QLaurentSeries mul_monomial(const QLaurentSeries &a, const QMonomial &m)
{
    return scale(shift(a, m.s), m.c);
}

// Cauchy product. val adds; prec = min(a.prec + b.val, b.prec + a.val), where
// an exact factor contributes no bound of its own.
inline QLaurentSeries mul(const QLaurentSeries &a, const QLaurentSeries &b)
{
    if ((a.is_exact() && a.is_zero()) || (b.is_exact() && b.is_zero())) {
        return QLaurentSeries::exact_zero();
    }
    bool exact = a.is_exact() && b.is_exact();
    std::int64_t lo = a.val() + b.val();
    std::int64_t hi = 0;
    if (exact) {
        hi = a.top() + b.top();
    } else if (a.is_exact()) {
        hi = b.prec() + a.val();
    } else if (b.is_exact()) {
        hi = a.prec() + b.val();
    } else {
        hi = std::min(a.prec() + b.val(), b.prec() + a.val());
    }
    QLaurentSeries r = detail::blank(exact, std::min(lo, hi + 1), hi);
    if (lo > hi) {
        return r;
    }
    const auto &ac = series_builder::coeffs(a);
    const auto &bc = series_builder::coeffs(b);
    auto &rc = series_builder::coeffs(r);
    std::int64_t a_len = std::min<std::int64_t>(static_cast<std::int64_t>(ac.size()), hi - lo + 1);
    Rational t;
    for (std::int64_t i = 0; i < a_len; ++i) {
        if (ac[static_cast<std::size_t>(i)] == 0) {
            continue;
        }
        std::int64_t b_len = std::min<std::int64_t>(static_cast<std::int64_t>(bc.size()), hi - lo - i + 1);
        for (std::int64_t j = 0; j < b_len; ++j) {
            if (bc[static_cast<std::size_t>(j)] == 0) {
                continue;
            }
            t = ac[static_cast<std::size_t>(i)] * bc[static_cast<std::size_t>(j)];
            rc[static_cast<std::size_t>(i + j)] += t;
        }
    }
    series_builder::finish(r);
    return r;
}

inline QLaurentSeries operator+(const QLaurentSeries &a, const QLaurentSeries &b)
{
    return add(a, b);
}

inline QLaurentSeries operator-(const QLaurentSeries &a, const QLaurentSeries &b)
{
    return sub(a, b);
}

inline QLaurentSeries operator-(const QLaurentSeries &a)
{
    return neg(a);
}

inline QLaurentSeries operator*(const QLaurentSeries &a, const QLaurentSeries &b)
{
    return mul(a, b);
}

// 1/a for a windowed series whose coefficient at val is nonzero. The result
// has val = -v and prec = a.prec - 2v.
inline QLaurentSeries invert(const QLaurentSeries &a)
{
    if (a.is_exact()) {
        throw std::invalid_argument("invert needs a window; truncate the exact series first");
    }
    if (a.prec() < a.val()) {
        throw empty_window("cannot invert a series with an empty window");
    }
    const Rational &lead = a.raw(a.val());
    if (lead == 0) {
        throw zero_leading_coefficient("coefficient at val = " + std::to_string(a.val()) + " is zero");
    }
    std::int64_t v = a.val();
    std::int64_t len = a.prec() - v + 1;
    const auto &u = series_builder::coeffs(a);
    std::vector<Rational> b(static_cast<std::size_t>(len));
    Rational inv_lead = 1 / lead;
    b[0] = inv_lead;
    Rational acc;
    for (std::int64_t k = 1; k < len; ++k) {
        acc = 0;
        for (std::int64_t i = 1; i <= k; ++i) {
            const Rational &ui = u[static_cast<std::size_t>(i)];
            if (ui != 0) {
                acc += ui * b[static_cast<std::size_t>(k - i)];
            }
        }
        b[static_cast<std::size_t>(k)] = -acc * inv_lead;
    }
    return QLaurentSeries::from_window(-v, a.prec() - 2 * v, std::move(b)).tightened();
}

// Expansion of 1/(1 - c q^d) through q^prec. For d < 0 the factor is rewritten
// as -c q^d (1 - c^-1 q^-d), giving a power series of valuation -d.
inline QLaurentSeries invert_binomial(const Rational &c, std::int64_t d, std::int64_t prec)
{
    if (d == 0) {
        if (c == 1) {
            throw pole_at_constant("1/(1 - q^0) has a pole");
        }
        return truncate(QLaurentSeries::constant(1 / (1 - c)), prec);
    }
    if (c == 0) {
        return truncate(QLaurentSeries::constant(Rational{1}), prec);
    }
    QLaurentSeries r = series_builder::windowed(std::min<std::int64_t>(0, prec + 1), prec);
    if (d > 0) {
        Rational p{1};
        for (std::int64_t e = 0; e <= prec; e += d) {
            series_builder::at(r, e) = p;
            p *= c;
        }
    } else {
        std::int64_t e = -d;
        Rational ci = 1 / c;
        Rational p = ci;
        for (std::int64_t t = e; t <= prec; t += e) {
            series_builder::at(r, t) = -p;
            p *= ci;
        }
    }
    series_builder::finish(r);
    return r;
}

// a * (1 - c q^e); an exact factor of valuation min(0, e).
inline QLaurentSeries mul_binomial(const QLaurentSeries &a, const Rational &c, std::int64_t e)
{
    if (c == 0) {
        return a;
    }
    if (e == 0) {
        return scale(a, 1 - c);
    }
    if (a.is_exact()) {
        if (a.is_zero()) {
            return a;
        }
        std::int64_t lo = a.val() + std::min<std::int64_t>(0, e);
        std::int64_t hi = a.top() + std::max<std::int64_t>(0, e);
        QLaurentSeries r = series_builder::exact(lo, hi);
        for (std::int64_t t = a.val(); t <= a.top(); ++t) {
            const Rational &x = a.raw(t);
            if (x != 0) {
                series_builder::at(r, t) += x;
                series_builder::at(r, t + e) -= c * x;
            }
        }
        series_builder::finish(r);
        return r;
    }
    std::int64_t m = std::min<std::int64_t>(0, e);
    std::int64_t prec = a.prec() + m;
    std::int64_t lo = a.val() + m;
    QLaurentSeries r = series_builder::windowed(std::min(lo, prec + 1), prec);
    for (std::int64_t t = r.val(); t <= prec; ++t) {
        Rational &slot = series_builder::at(r, t);
        slot = a.raw(t);
        const Rational &y = a.raw(t - e);
        if (y != 0) {
            slot -= c * y;
        }
    }
    series_builder::finish(r);
    return r;
}

// a / (1 - c q^e) for a windowed a. For e > 0 the window is kept; for e < 0
// both val and prec rise by -e.
inline QLaurentSeries div_binomial(const QLaurentSeries &a, const Rational &c, std::int64_t e)
{
    if (c == 0) {
        return a;
    }
    if (e == 0) {
        if (c == 1) {
            throw pole_at_constant("division by 1 - q^0");
        }
        return scale(a, 1 / (1 - c));
    }
    if (a.is_exact()) {
        throw std::invalid_argument("div_binomial needs a window; truncate the exact series first");
    }
    if (e < 0) {
        Rational ci = 1 / c;
        return div_binomial(scale(shift(a, -e), -ci), ci, -e);
    }
    QLaurentSeries r = a;
    if (r.val() > r.prec()) {
        return r;
    }
    auto &rc = series_builder::coeffs(r);
    std::int64_t len = static_cast<std::int64_t>(rc.size());
    for (std::int64_t i = e; i < len; ++i) {
        const Rational &prev = rc[static_cast<std::size_t>(i - e)];
        if (prev != 0) {
            rc[static_cast<std::size_t>(i)] += c * prev;
        }
    }
    series_builder::finish(r);
    return r;
}

inline constexpr int default_sum_guard = 3;

// Sum of term(k) for k = k0, k0+1, ... within the window ending at prec.
// Stops once `guard` consecutive terms vanish through the window; fails after
// 10 * (prec + 50) terms.
inline QLaurentSeries sum_terms(std::int64_t k0, std::int64_t prec,
                                const std::function<QLaurentSeries(std::int64_t)> &term,
                                int guard = default_sum_guard)
{
    QLaurentSeries acc = QLaurentSeries::zero(prec);
    std::int64_t cap = 10 * (std::max<std::int64_t>(prec, 0) + 50);
    int quiet = 0;
    for (std::int64_t i = 0; i < cap; ++i) {
        QLaurentSeries t = term(k0 + i);
        bool beyond = t.is_zero() || t.val() > std::min(prec, t.prec());
        acc = add(acc, t);
        quiet = beyond ? quiet + 1 : 0;
        if (quiet >= guard) {
            return acc;
        }
    }
    throw divergent_formal_sum("term valuations stayed within the window for " + std::to_string(cap)
                               + " terms starting at k=" + std::to_string(k0));
}

struct Comparison {
    enum class Kind { equal, first_mismatch, insufficient_window };

    Kind kind = Kind::equal;
    // Largest exponent compared (exact_prec when both sides are exact).
    std::int64_t window = 0;
    std::int64_t exponent = 0;
    Rational lhs;
    Rational rhs;

    bool equal() const noexcept
    {
        return kind == Kind::equal;
    }
};

// Compares every exponent up to min(a.prec, b.prec). A side holding a nonzero
// coefficient inside its own window whose valuation still lies past the common
// window was never really compared; that is reported as insufficient_window.
inline Comparison equal_to_precision(const QLaurentSeries &a, const QLaurentSeries &b)
{
    QLaurentSeries x = a.tightened();
    QLaurentSeries y = b.tightened();
    Comparison out;
    out.window = std::min(x.prec(), y.prec());
    for (const QLaurentSeries *s : {&x, &y}) {
        if (!s->is_zero() && s->val() > out.window) {
            out.kind = Comparison::Kind::insufficient_window;
            return out;
        }
    }
    std::int64_t lo = std::min(x.val(), y.val());
    std::int64_t hi = std::min(out.window, std::max(x.top(), y.top()));
    for (std::int64_t e = lo; e <= hi; ++e) {
        if (x.raw(e) != y.raw(e)) {
            out.kind = Comparison::Kind::first_mismatch;
            out.exponent = e;
            out.lhs = x.raw(e);
            out.rhs = y.raw(e);
            return out;
        }
    }
    return out;
}

// Human-readable form, e.g. "1 - q + 1/2*q^3 + O(q^11)".
inline std::string to_string(const QLaurentSeries &a)
{
    std::string out;
    for (std::int64_t e = a.val(); e <= a.top(); ++e) {
        const Rational &c = a.raw(e);
        if (c == 0) {
            continue;
        }
        Rational mag = abs(c);
        if (out.empty()) {
            out += c < 0 ? "-" : "";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        bool unit = mag == 1 && e != 0;
        if (!unit) {
            out += mag.get_str();
        }
        if (e != 0) {
            out += unit ? "" : "*";
            out += e == 1 ? "q" : "q^" + std::to_string(e);
        }
    }
    if (out.empty()) {
        out = "0";
    }
    if (!a.is_exact()) {
        out += " + O(q^" + std::to_string(a.prec() + 1) + ")";
    }
    return out;
}

} // namespace qdiv

#endif
