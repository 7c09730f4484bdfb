#ifndef QDIV_RATIONAL_HPP
#define QDIV_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace qdiv
{

// Exact fraction with canonical form: positive denominator, reduced, zero is 0/1.
// mpq_class keeps that form after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    Rational r{Integer{static_cast<long>(num)}, Integer{static_cast<long>(den)}};
    r.canonicalize();
    return r;
}

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational &r)
{
    return r.get_str();
}

inline Rational parse_rational(std::string_view text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty rational literal");
    }
    std::string s{text};
    auto slash = s.find('/');
    auto check_int = [](const std::string &part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) {
            ++i;
        }
        if (i == part.size()) {
            return false;
        }
        for (; i < part.size(); ++i) {
            if (part[i] < '0' || part[i] > '9') {
                return false;
            }
        }
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!check_int(num, true) || !check_int(den, false)) {
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
    if (num[0] == '+') {
        num.erase(0, 1);
    }
    Integer d{den};
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    Rational r{Integer{num}, d};
    r.canonicalize();
    return r;
}

inline Rational pow(const Rational &base, std::int64_t e)
{
    if (e < 0) {
        if (base == 0) {
            throw std::domain_error("negative power of zero");
        }
        Rational inv = 1 / base;
        return pow(inv, -e);
    }
    Rational r{mpz_class{1}};
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
}

inline Rational factorial(std::int64_t n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational{f};
}

inline Rational binomial(std::int64_t n, std::int64_t k)
{
    if (k < 0 || k > n) {
        return Rational{0};
    }
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational{b};
}

} // namespace qdiv

#endif
