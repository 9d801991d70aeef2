#ifndef STEREO_POLY_HPP
#define STEREO_POLY_HPP

// Sparse bivariate polynomials with exact rational coefficients.
//
// A BiPoly carries its ordered variable pair; arithmetic between
// polynomials over different pairs is rejected. Terms are kept in the
// canonical order (descending total degree, then descending exponent of
// the first variable) so iteration order is the serialization order.

#include "stereo/errors.hpp"
#include "stereo/rational.hpp"
#include "stereo/upoly.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stereo {

using Variables = std::array<std::string, 2>;

inline std::string to_string(const Variables& v)
{
    return v[0] + "," + v[1];
}

struct Monomial {
    unsigned first = 0;
    unsigned second = 0;

    unsigned degree() const { return first + second; }
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct CanonicalOrder {
    bool operator()(const Monomial& a, const Monomial& b) const
    {
        if (a.degree() != b.degree())
            return a.degree() > b.degree();
        return a.first > b.first;
    }
};

class BiPoly {
public:
    using TermMap = std::map<Monomial, Rational, CanonicalOrder>;

    BiPoly() : vars_{"x", "y"} {}
    explicit BiPoly(Variables vars) : vars_(std::move(vars)) {}

    static BiPoly constant(const Variables& vars, const Rational& c)
    {
        BiPoly p(vars);
        p.add_term({0, 0}, c);
        return p;
    }

    /// The polynomial consisting of the variable at `index` (0 or 1).
    static BiPoly variable(const Variables& vars, int index)
    {
        BiPoly p(vars);
        p.add_term(index == 0 ? Monomial{1, 0} : Monomial{0, 1}, Rational(1));
        return p;
    }

    static BiPoly term(const Variables& vars, Monomial m, const Rational& c)
    {
        BiPoly p(vars);
        p.add_term(m, c);
        return p;
    }

    const Variables& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }

    /// Total degree; -1 stands for the zero polynomial.
    int total_degree() const { return is_zero() ? -1 : static_cast<int>(terms_.begin()->first.degree()); }

    unsigned degree_in(int index) const
    {
        unsigned d = 0;
        for (const auto& [m, c] : terms_)
            d = std::max(d, index == 0 ? m.first : m.second);
        return d;
    }

    Rational coefficient(Monomial m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coefficient({0, 0}); }

    /// Adds c * m, dropping the entry if it cancels.
    void add_term(Monomial m, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    /// Same coefficients, relabelled variables.
    BiPoly renamed(const Variables& vars) const
    {
        BiPoly p(vars);
        p.terms_ = terms_;
        return p;
    }

    bool is_homogeneous() const
    {
        if (is_zero())
            return true;
        unsigned d = terms_.begin()->first.degree();
        return terms_.rbegin()->first.degree() == d;
    }

    BiPoly& operator+=(const BiPoly& o)
    {
        check_same(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    BiPoly& operator-=(const BiPoly& o)
    {
        check_same(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    BiPoly& operator*=(const Rational& s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_)
            c *= s;
        return *this;
    }
    BiPoly& operator*=(const BiPoly& o) { return *this = *this * o; }

    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator-(BiPoly a) { return a *= Rational(-1); }
    friend BiPoly operator*(BiPoly a, const Rational& s) { return a *= s; }
    friend BiPoly operator*(const Rational& s, BiPoly a) { return a *= s; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b)
    {
        a.check_same(b);
        BiPoly r(a.vars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.add_term({ma.first + mb.first, ma.second + mb.second}, ca * cb);
        return r;
    }

    /// Exact equality, including the variable pair.
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

    /// Exact for Rational, ordinary floating evaluation for double.
    template <class T>
    T evaluate(const T& a, const T& b) const
    {
        if (is_zero())
            return T(0);
        std::vector<T> pa{T(1)}, pb{T(1)};
        for (unsigned i = 1; i <= degree_in(0); ++i)
            pa.push_back(pa.back() * a);
        for (unsigned i = 1; i <= degree_in(1); ++i)
            pb.push_back(pb.back() * b);
        T acc = T(0);
        for (const auto& [m, c] : terms_)
            acc += coefficient_as<T>(c) * pa[m.first] * pb[m.second];
        return acc;
    }

    BiPoly derivative(int index) const
    {
        BiPoly d(vars_);
        for (const auto& [m, c] : terms_) {
            unsigned e = index == 0 ? m.first : m.second;
            if (e == 0)
                continue;
            Monomial dm = index == 0 ? Monomial{m.first - 1, m.second} : Monomial{m.first, m.second - 1};
            d.add_term(dm, c * e);
        }
        return d;
    }

private:
    template <class T>
    static T coefficient_as(const Rational& c)
    {
        if constexpr (std::is_same_v<T, Rational>)
            return c;
        else
            return static_cast<T>(c.get_d());
    }

    void check_same(const BiPoly& o) const
    {
        if (vars_ != o.vars_)
            throw VariableMismatch(to_string(vars_), to_string(o.vars_));
    }

    Variables vars_;
    TermMap terms_;
};

inline BiPoly pow(BiPoly base, unsigned exponent)
{
    BiPoly result = BiPoly::constant(base.variables(), Rational(1));
    while (exponent) {
        if (exponent & 1u)
            result *= base;
        exponent >>= 1u;
        if (exponent)
            base *= base;
    }
    return result;
}

/// p(first, second): substitutes polynomials (over a common pair) for the variables of p.
inline BiPoly compose(const BiPoly& p, const BiPoly& first, const BiPoly& second)
{
    if (first.variables() != second.variables())
        throw VariableMismatch(to_string(first.variables()), to_string(second.variables()));
    const Variables& vars = first.variables();
    std::vector<BiPoly> pf{BiPoly::constant(vars, 1)}, ps{BiPoly::constant(vars, 1)};
    for (unsigned i = 1; i <= p.degree_in(0); ++i)
        pf.push_back(pf.back() * first);
    for (unsigned i = 1; i <= p.degree_in(1); ++i)
        ps.push_back(ps.back() * second);
    BiPoly r(vars);
    for (const auto& [m, c] : p.terms())
        r += c * (pf[m.first] * ps[m.second]);
    return r;
}

/// p(sa * first, sb * second) over the same or a new variable pair.
inline BiPoly scale_arguments(const BiPoly& p, const Rational& sa, const Rational& sb, const Variables& vars)
{
    BiPoly r(vars);
    for (const auto& [m, c] : p.terms())
        r.add_term(m, c * pow(sa, static_cast<long>(m.first)) * pow(sb, static_cast<long>(m.second)));
    return r;
}

inline BiPoly scale_arguments(const BiPoly& p, const Rational& sa, const Rational& sb)
{
    return scale_arguments(p, sa, sb, p.variables());
}

/// p(second, first).
inline BiPoly swap_arguments(const BiPoly& p)
{
    BiPoly r(p.variables());
    for (const auto& [m, c] : p.terms())
        r.add_term({m.second, m.first}, c);
    return r;
}

struct HomogeneousComponent {
    unsigned degree;
    BiPoly form;
};

/// Nonzero homogeneous forms, degrees strictly increasing.
inline std::vector<HomogeneousComponent> homogeneous_components(const BiPoly& p)
{
    std::map<unsigned, BiPoly> by_degree;
    for (const auto& [m, c] : p.terms()) {
        auto [it, ignored] = by_degree.try_emplace(m.degree(), p.variables());
        it->second.add_term(m, c);
    }
    std::vector<HomogeneousComponent> out;
    out.reserve(by_degree.size());
    for (auto& [d, form] : by_degree)
        out.push_back({d, std::move(form)});
    return out;
}

/// The degree-d form of p (zero when absent).
inline BiPoly homogeneous_part(const BiPoly& p, unsigned d)
{
    BiPoly r(p.variables());
    for (const auto& [m, c] : p.terms())
        if (m.degree() == d)
            r.add_term(m, c);
    return r;
}

/// first^2 + second^2 over the given pair.
inline BiPoly circle(const Variables& vars)
{
    BiPoly c(vars);
    c.add_term({2, 0}, Rational(1));
    c.add_term({0, 2}, Rational(1));
    return c;
}

struct CircleDivision {
    BiPoly quotient;
    BiPoly remainder; // of the form c1(first) * second + c0(first)
};

/// Division by second^2 + first^2 as a polynomial in the second variable
/// with coefficients in Q[first]; the remainder is at most linear in second.
inline CircleDivision divide_by_circle(const BiPoly& p)
{
    // rows[j] holds the coefficient of second^j as a map first-exponent -> coefficient
    unsigned top = p.degree_in(1);
    std::vector<std::map<unsigned, Rational>> rows(top + 1);
    for (const auto& [m, c] : p.terms())
        rows[m.second][m.first] += c;

    BiPoly q(p.variables());
    for (unsigned j = top; j >= 2; --j) {
        for (const auto& [e, c] : rows[j]) {
            if (c == 0)
                continue;
            q.add_term({e, j - 2}, c);
            rows[j - 2][e + 2] -= c;
        }
        rows[j].clear();
    }
    BiPoly r(p.variables());
    for (unsigned j = 0; j < rows.size() && j < 2; ++j)
        for (const auto& [e, c] : rows[j])
            r.add_term({e, j}, c);
    return {std::move(q), std::move(r)};
}

/// q with q * (first^2 + second^2) == p; throws NotDivisible otherwise.
inline BiPoly divide_exact_by_circle(const BiPoly& p)
{
    auto [q, r] = divide_by_circle(p);
    if (!r.is_zero())
        throw NotDivisible("polynomial is not divisible by " + p.variables()[0] + "^2 + " + p.variables()[1] + "^2");
    return q;
}

inline constexpr unsigned kInfiniteValuation = std::numeric_limits<unsigned>::max();

/// Largest k with (first^2 + second^2)^k dividing p; kInfiniteValuation for p = 0.
inline unsigned circle_valuation(const BiPoly& p)
{
    if (p.is_zero())
        return kInfiniteValuation;
    unsigned k = 0;
    BiPoly cur = p;
    while (true) {
        auto [q, r] = divide_by_circle(cur);
        if (!r.is_zero())
            return k;
        ++k;
        cur = std::move(q);
    }
}

namespace detail {

/// p as a polynomial in the second variable with coefficients in Q[first].
inline PolyOverUPoly to_poly_over_first(const BiPoly& p)
{
    PolyOverUPoly out(p.is_zero() ? 0 : p.degree_in(1) + 1);
    for (const auto& [m, c] : p.terms())
        out[m.second] += UPoly::monomial(m.first, c);
    return out;
}

} // namespace detail

/// Resultant of a and b with respect to the second variable, as a polynomial in the first.
inline UPoly resultant_second(const BiPoly& a, const BiPoly& b)
{
    return resultant(detail::to_poly_over_first(a), detail::to_poly_over_first(b));
}

/// True iff a and b have no nonconstant common factor.
///
/// Content check in Q[first] followed by a resultant in the second
/// variable of the primitive parts.
inline bool is_coprime(const BiPoly& a, const BiPoly& b)
{
    if (a.variables() != b.variables())
        throw VariableMismatch(to_string(a.variables()), to_string(b.variables()));
    if (a.is_zero() && b.is_zero())
        throw BothZero();
    if (a.is_zero())
        return b.is_constant();
    if (b.is_zero())
        return a.is_constant();

    auto pa = detail::to_poly_over_first(a);
    auto pb = detail::to_poly_over_first(b);
    UPoly ca = detail::content(pa), cb = detail::content(pb);
    if (gcd(ca, cb).degree() > 0)
        return false;
    if (detail::degree(pa) == 0 || detail::degree(pb) == 0)
        return true;
    pa = detail::divide_coefficients(pa, ca);
    pb = detail::divide_coefficients(pb, cb);
    return !resultant(pa, pb).is_zero();
}

/// Canonical text: "-u^3 + 3*u*v^2", "1/4*x^2*y - 2", "0".
inline std::string to_string(const BiPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    bool first_term = true;
    for (const auto& [m, c] : p.terms()) {
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (first_term)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first_term = false;

        std::string mono;
        auto append = [&](const std::string& v, unsigned e) {
            if (e == 0)
                return;
            if (!mono.empty())
                mono += "*";
            mono += v;
            if (e > 1)
                mono += "^" + std::to_string(e);
        };
        append(p.variables()[0], m.first);
        append(p.variables()[1], m.second);

        if (mono.empty())
            out += to_string(mag);
        else if (mag == 1)
            out += mono;
        else
            out += to_string(mag) + "*" + mono;
    }
    return out;
}

} // namespace stereo

#endif // STEREO_POLY_HPP
