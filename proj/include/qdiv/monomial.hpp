#ifndef QDIV_MONOMIAL_HPP
#define QDIV_MONOMIAL_HPP

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <qdiv/rational.hpp>

namespace qdiv
{

// The value c*q^s substituted for a letter parameter (z, v, x, y).
struct QMonomial {
    Rational c{1};
    std::int64_t s = 0;

    QMonomial() = default;
    QMonomial(Rational coeff, std::int64_t shift) : c(std::move(coeff)), s(shift)
    {
        if (c == 0) {
            throw std::invalid_argument("monomial coefficient must be nonzero");
        }
    }

    static QMonomial q_power(std::int64_t shift)
    {
        return QMonomial{Rational{1}, shift};
    }

    // c*q^(s+t)
    QMonomial shifted(std::int64_t t) const
    {
        return QMonomial{c, s + t};
    }

    QMonomial inverse() const
    {
        return QMonomial{1 / c, -s};
    }

    QMonomial pow(std::int64_t k) const
    {
        return QMonomial{qdiv::pow(c, k), s * k};
    }

    // True when 1 - c*q^(s+t) is the zero constant.
    bool vanishes_at(std::int64_t t) const
    {
        return c == 1 && s + t == 0;
    }

    friend QMonomial operator*(const QMonomial &a, const QMonomial &b)
    {
        return QMonomial{a.c * b.c, a.s + b.s};
    }

    friend QMonomial operator/(const QMonomial &a, const QMonomial &b)
    {
        return a * b.inverse();
    }

    friend bool operator==(const QMonomial &a, const QMonomial &b)
    {
        return a.c == b.c && a.s == b.s;
    }
};

// Literal grammar: C or C*q^S, with C = [-]p or [-]p/q and S a signed integer.
inline std::string to_string(const QMonomial &m)
{
    if (m.s == 0) {
        return to_string(m.c);
    }
    return to_string(m.c) + "*q^" + std::to_string(m.s);
}

inline QMonomial parse_monomial(std::string_view text)
{
    auto star = text.find('*');
    if (star == std::string_view::npos) {
        return QMonomial{parse_rational(text), 0};
    }
    auto tail = text.substr(star + 1);
    if (tail.size() < 3 || tail[0] != 'q' || tail[1] != '^') {
        throw std::invalid_argument("malformed monomial literal '" + std::string{text} + "'");
    }
    auto digits = tail.substr(2);
    std::int64_t s = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), s);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        throw std::invalid_argument("malformed exponent in '" + std::string{text} + "'");
    }
    Rational c = parse_rational(text.substr(0, star));
    if (c == 0) {
        throw std::invalid_argument("monomial coefficient must be nonzero");
    }
    return QMonomial{std::move(c), s};
}

} // namespace qdiv

#endif
