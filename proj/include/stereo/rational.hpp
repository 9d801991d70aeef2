#ifndef STEREO_RATIONAL_HPP
#define STEREO_RATIONAL_HPP

// Exact rational scalars (GMP) and the text forms used across the library.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stereo {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    if (den == 0)
        throw std::invalid_argument("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

/// Accepts "p", "p/q" and finite decimals such as "-0.25"; all parsed exactly.
inline Rational parse_rational(std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("empty rational literal");

    auto bad = [&] { return std::invalid_argument("malformed rational literal '" + std::string(text) + "'"); };

    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string body = s.substr(pos);
    if (body.empty())
        throw bad();

    Rational value;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::string num = body.substr(0, slash), den = body.substr(slash + 1);
        if (num.empty() || den.empty())
            throw bad();
        for (char c : num + den)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw bad();
        mpz_class d(den, 10);
        if (d == 0)
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        value = Rational(mpz_class(num, 10), d);
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty())
            throw bad();
        for (char c : whole + frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw bad();
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        value = Rational(mpz_class(whole.empty() ? "0" : whole, 10) * scale + mpz_class(frac.empty() ? "0" : frac, 10), scale);
    } else {
        for (char c : body)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw bad();
        value = Rational(mpz_class(body, 10));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

inline double to_double(const Rational& q)
{
    return q.get_d();
}

/// Integer power with a possibly negative exponent (base must be nonzero then).
inline Rational pow(const Rational& base, long exponent)
{
    if (exponent < 0 && sgn(base) == 0)
        throw std::domain_error("zero raised to a negative power");
    Rational result = 1;
    Rational b = exponent < 0 ? Rational(1 / base) : base;
    unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1u)
            result *= b;
        b *= b;
        e >>= 1u;
    }
    return result;
}

} // namespace stereo

#endif // STEREO_RATIONAL_HPP
