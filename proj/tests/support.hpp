#ifndef STEREO_TESTS_SUPPORT_HPP
#define STEREO_TESTS_SUPPORT_HPP

#include "stereo/conjugate.hpp"
#include "stereo/parse.hpp"
#include "stereo/system.hpp"

#include <random>
#include <string>

namespace testing_support {

using namespace stereo;

inline const Variables kXY{"x", "y"};
inline const Variables kUV{"u", "v"};

inline BiPoly P(const std::string& text, const Variables& vars = kXY)
{
    return parse_polynomial(text, vars);
}

inline DiffSystem S(const std::string& p, const std::string& q, const Variables& vars = kXY)
{
    return parse_system({vars, {p, q}});
}

/// Dense random polynomial of total degree <= deg with integer coefficients in [lo, hi].
inline BiPoly random_poly(std::mt19937_64& rng, unsigned deg, int lo = -5, int hi = 5, const Variables& vars = kXY)
{
    std::uniform_int_distribution<int> coef(lo, hi);
    BiPoly p(vars);
    for (unsigned d = 0; d <= deg; ++d)
        for (unsigned i = 0; i <= d; ++i)
            p.add_term({i, d - i}, Rational(coef(rng)));
    return p;
}

inline Rational random_rational(std::mt19937_64& rng, int span = 9, int max_den = 7)
{
    std::uniform_int_distribution<int> num(-span, span), den(1, max_den);
    return make_rational(num(rng), den(rng));
}

/// Random system of degree <= deg whose right sides are coprime and not both zero.
inline DiffSystem random_coprime_system(std::mt19937_64& rng, unsigned deg)
{
    for (;;) {
        BiPoly a = random_poly(rng, deg), b = random_poly(rng, deg);
        if (a.is_zero() && b.is_zero())
            continue;
        DiffSystem s(a, b);
        if (s.coprime())
            return s;
    }
}

} // namespace testing_support

#endif
