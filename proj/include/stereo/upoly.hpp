#ifndef STEREO_UPOLY_HPP
#define STEREO_UPOLY_HPP

// Dense univariate polynomials over Q, and polynomials over Q[t] used for
// resultants of bivariate polynomials.

#include "stereo/rational.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stereo {

class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }
    UPoly(const Rational& constant) : c_{constant} { trim(); } // NOLINT(google-explicit-constructor)

    static UPoly monomial(std::size_t exponent, const Rational& coefficient)
    {
        std::vector<Rational> c(exponent + 1);
        c[exponent] = coefficient;
        return UPoly(std::move(c));
    }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const Rational& lead() const { return c_.back(); }
    const std::vector<Rational>& coefficients() const { return c_; }

    Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    UPoly& operator+=(const UPoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] += o.c_[i];
        trim();
        return *this;
    }
    UPoly& operator-=(const UPoly& o)
    {
        if (o.c_.size() > c_.size())
            c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
    friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
    friend UPoly operator-(UPoly a)
    {
        for (auto& v : a.c_)
            v = -v;
        return a;
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(c));
    }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Euclidean division over Q: returns (quotient, remainder).
    friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b)
    {
        if (b.is_zero())
            throw std::domain_error("division by the zero polynomial");
        std::vector<Rational> rem = a.c_;
        int db = b.degree();
        int dq = a.degree() - db;
        if (dq < 0)
            return {UPoly(), a};
        std::vector<Rational> q(static_cast<std::size_t>(dq) + 1);
        for (int i = a.degree(); i >= db; --i) {
            if (rem[static_cast<std::size_t>(i)] == 0)
                continue;
            Rational f = rem[static_cast<std::size_t>(i)] / b.lead();
            q[static_cast<std::size_t>(i - db)] = f;
            for (int j = 0; j <= db; ++j)
                rem[static_cast<std::size_t>(i - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
        }
        return {UPoly(std::move(q)), UPoly(std::move(rem))};
    }

    /// Quotient of a division known to be exact.
    friend UPoly exact_quotient(const UPoly& a, const UPoly& b)
    {
        auto [q, r] = divmod(a, b);
        if (!r.is_zero())
            throw std::logic_error("inexact univariate division");
        return q;
    }

    UPoly monic() const
    {
        if (is_zero())
            return {};
        UPoly m = *this;
        Rational l = lead();
        for (auto& v : m.c_)
            v /= l;
        return m;
    }

    /// Monic gcd; gcd(0, 0) = 0.
    friend UPoly gcd(UPoly a, UPoly b)
    {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    template <class T>
    T evaluate(const T& t) const
    {
        T acc = T(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * t + T(*it);
        return acc;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline UPoly pow(UPoly base, unsigned exponent)
{
    UPoly result(Rational(1));
    while (exponent) {
        if (exponent & 1u)
            result *= base;
        base *= base;
        exponent >>= 1u;
    }
    return result;
}

/// Polynomial in one variable whose coefficients lie in Q[t]; index = exponent.
using PolyOverUPoly = std::vector<UPoly>;

namespace detail {

inline void trim(PolyOverUPoly& p)
{
    while (!p.empty() && p.back().is_zero())
        p.pop_back();
}

inline int degree(const PolyOverUPoly& p)
{
    return static_cast<int>(p.size()) - 1;
}

/// Monic gcd of all coefficients.
inline UPoly content(const PolyOverUPoly& p)
{
    UPoly g;
    for (const auto& c : p) {
        g = gcd(g, c);
        if (g.is_constant() && !g.is_zero())
            break;
    }
    return g;
}

inline PolyOverUPoly divide_coefficients(const PolyOverUPoly& p, const UPoly& d)
{
    PolyOverUPoly out;
    out.reserve(p.size());
    for (const auto& c : p)
        out.push_back(exact_quotient(c, d));
    trim(out);
    return out;
}

/// lc(b)^(deg a - deg b + 1) * a mod b, computed without leaving Q[t][y].
inline PolyOverUPoly pseudo_remainder(PolyOverUPoly a, const PolyOverUPoly& b)
{
    int db = degree(b);
    int delta = degree(a) - db;
    const UPoly& lb = b.back();
    int steps = delta + 1;
    while (degree(a) >= db) {
        UPoly la = a.back();
        int shift = degree(a) - db;
        for (auto& c : a)
            c *= lb;
        for (int j = 0; j <= db; ++j)
            a[static_cast<std::size_t>(shift + j)] -= la * b[static_cast<std::size_t>(j)];
        trim(a);
        --steps;
    }
    if (steps > 0) {
        UPoly f = pow(lb, static_cast<unsigned>(steps));
        for (auto& c : a)
            c *= f;
    }
    return a;
}

} // namespace detail

/// Resultant with respect to the outer variable, via the subresultant
/// remainder sequence (coefficient growth stays polynomial in the degrees).
inline UPoly resultant(PolyOverUPoly a, PolyOverUPoly b)
{
    detail::trim(a);
    detail::trim(b);
    if (a.empty() || b.empty())
        return {};

    UPoly ca = detail::content(a), cb = detail::content(b);
    a = detail::divide_coefficients(a, ca);
    b = detail::divide_coefficients(b, cb);
    UPoly t = pow(ca, static_cast<unsigned>(detail::degree(b))) * pow(cb, static_cast<unsigned>(detail::degree(a)));

    Rational sign = 1;
    if (detail::degree(a) < detail::degree(b)) {
        std::swap(a, b);
        if (detail::degree(a) % 2 == 1 && detail::degree(b) % 2 == 1)
            sign = -sign;
    }
    if (detail::degree(b) == 0)
        return pow(b.back(), static_cast<unsigned>(detail::degree(a))) * t * UPoly(sign);

    UPoly g(Rational(1)), h(Rational(1));
    while (true) {
        int delta = detail::degree(a) - detail::degree(b);
        if (detail::degree(a) % 2 == 1 && detail::degree(b) % 2 == 1)
            sign = -sign;
        PolyOverUPoly r = detail::pseudo_remainder(a, b);
        a = std::move(b);
        b = detail::divide_coefficients(r, g * pow(h, static_cast<unsigned>(delta)));
        g = a.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_quotient(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
        }
        if (b.empty())
            return {};
        if (detail::degree(b) == 0)
            break;
    }
    int da = detail::degree(a);
    UPoly tail = exact_quotient(pow(b.back(), static_cast<unsigned>(da)), pow(h, static_cast<unsigned>(da - 1)));
    return tail * t * UPoly(sign);
}

} // namespace stereo

#endif // STEREO_UPOLY_HPP
