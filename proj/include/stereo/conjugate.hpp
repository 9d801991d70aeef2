#ifndef STEREO_CONJUGATE_HPP
#define STEREO_CONJUGATE_HPP

// The stereographically conjugate system.
//
// The Bendixson map x = 4u/(u^2+v^2), y = 4v/(u^2+v^2) pushes the field
// (P, Q) to a rational field whose numerators, after multiplying through
// by (u^2+v^2)^n, are the raw pair (U0, V0). Removing the largest common
// power k of u^2+v^2 gives the reduced pair (U, V) and the positive time
// change (u^2+v^2)^m dtau = dt with m = n - k.
//
// The direct path (raw pair, then exact circle division) is the main
// algorithm. The closed form assembled from the K_r/Q_r quotients is kept
// as an independent route and checked against it in the tests.

#include "stereo/errors.hpp"
#include "stereo/poly.hpp"
#include "stereo/system.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stereo {

struct ConjugationResult {
    DiffSystem conjugate;
    std::array<BiPoly, 2> raw;
    unsigned k = 0; // circle power removed
    unsigned m = 0; // time-factor exponent, n - k

    std::string time_relation() const
    {
        const auto& v = conjugate.variables();
        return "(" + v[0] + "^2+" + v[1] + "^2)^" + std::to_string(m) + " dtau = dt";
    }
};

namespace detail {

/// sum_j s^(n-j) F_j(4a, 4b) for the homogeneous parts F_j of f, j <= upto.
inline BiPoly weighted_form_sum(const BiPoly& f, unsigned n, unsigned upto, unsigned shift, const Variables& target)
{
    BiPoly s = circle(target);
    BiPoly acc(target);
    for (const auto& comp : homogeneous_components(f)) {
        if (comp.degree > upto)
            continue;
        BiPoly scaled = scale_arguments(comp.form, Rational(4), Rational(4), target);
        acc += pow(s, n - comp.degree - shift) * scaled;
    }
    return acc;
}

/// ((b^2-a^2)/4) A - (ab/2) B  and  -(ab/2) A + ((a^2-b^2)/4) B
inline std::array<BiPoly, 2> rotate_pair(const BiPoly& a_sum, const BiPoly& b_sum, const Variables& target)
{
    BiPoly a2 = BiPoly::term(target, {2, 0}, Rational(1, 4));
    BiPoly b2 = BiPoly::term(target, {0, 2}, Rational(1, 4));
    BiPoly ab = BiPoly::term(target, {1, 1}, Rational(1, 2));
    return {(b2 - a2) * a_sum - ab * b_sum, -(ab * a_sum) + (a2 - b2) * b_sum};
}

} // namespace detail

struct WnDivisibility {
    bool divisible = false;
    BiPoly quotient_or_remainder; // P with W_n = (x^2+y^2) P, or the nonzero remainder
};

/// W_n = x Y_n - y X_n from the top forms, tested for divisibility by x^2 + y^2.
inline WnDivisibility wn_divisibility(const DiffSystem& sys)
{
    const Variables& vars = sys.variables();
    BiPoly xn = homogeneous_part(sys.p(), sys.degree());
    BiPoly yn = homogeneous_part(sys.q(), sys.degree());
    BiPoly w = BiPoly::variable(vars, 0) * yn - BiPoly::variable(vars, 1) * xn;
    auto [q, r] = divide_by_circle(w);
    if (r.is_zero())
        return {true, std::move(q)};
    return {false, std::move(r)};
}

/// (U0, V0): numerators of the pushed-forward field times (u^2+v^2)^n.
inline std::array<BiPoly, 2> raw_conjugate(const DiffSystem& sys, const Variables& target)
{
    unsigned n = sys.degree();
    BiPoly sx = detail::weighted_form_sum(sys.p(), n, n, 0, target);
    BiPoly sy = detail::weighted_form_sum(sys.q(), n, n, 0, target);
    return detail::rotate_pair(sx, sy, target);
}

inline std::array<BiPoly, 2> raw_conjugate(const DiffSystem& sys)
{
    return raw_conjugate(sys, partner_variables(sys.variables()));
}

inline ConjugationResult conjugate(const DiffSystem& sys, const Variables& target)
{
    auto raw = raw_conjugate(sys, target);
    if (raw[0].is_zero() && raw[1].is_zero())
        throw ZeroField();
    unsigned k = std::min(circle_valuation(raw[0]), circle_valuation(raw[1]));
    std::array<BiPoly, 2> reduced = raw;
    for (unsigned i = 0; i < k; ++i)
        for (auto& c : reduced)
            c = divide_exact_by_circle(c);
    if (2 * k > sys.degree() + 2 || k > sys.degree())
        throw std::logic_error("circle power exceeds the bound for the input degree");
    return {DiffSystem(std::move(reduced[0]), std::move(reduced[1])), std::move(raw), k, sys.degree() - k};
}

inline ConjugationResult conjugate(const DiffSystem& sys)
{
    return conjugate(sys, partner_variables(sys.variables()));
}

/// Conjugating twice returns the input multiplied by 16^m: the two time
/// changes compose to dt = 16^m dt'. The orbits are those of the input.
inline Rational double_conjugation_scale(unsigned m)
{
    return pow(Rational(16), static_cast<long>(m));
}

struct KrDecomposition {
    std::vector<BiPoly> k_terms; // K_1 .. K_k
    std::vector<BiPoly> q_terms; // Q_1 .. Q_k
};

/// The exact quotients K_r, Q_r of
///   -2y(x Y_j - y X_j) - (x^2+y^2) X_j = (x^2+y^2)^(k-r+1) K_r
///    2x(x Y_j - y X_j) - (x^2+y^2) Y_j = (x^2+y^2)^(k-r+1) Q_r
/// with j = n - r + 1. Throws NotDivisibleAt(r) on the first failure.
inline KrDecomposition kr_decomposition(const DiffSystem& sys, unsigned k)
{
    unsigned n = sys.degree();
    if (k == 0 || 2 * k > n + 2)
        throw std::invalid_argument("correction order must satisfy 1 <= k and 2k <= n + 2");
    const Variables& vars = sys.variables();
    BiPoly x = BiPoly::variable(vars, 0), y = BiPoly::variable(vars, 1), s = circle(vars);
    KrDecomposition out;
    for (unsigned r = 1; r <= k; ++r) {
        BiPoly xj(vars), yj(vars);
        if (n + 1 >= r) {
            xj = homogeneous_part(sys.p(), n + 1 - r);
            yj = homogeneous_part(sys.q(), n + 1 - r);
        }
        BiPoly w = x * yj - y * xj;
        BiPoly lhs_k = Rational(-2) * y * w - s * xj;
        BiPoly lhs_q = Rational(2) * x * w - s * yj;
        for (unsigned i = 0; i < k - r + 1; ++i) {
            auto dk = divide_by_circle(lhs_k);
            auto dq = divide_by_circle(lhs_q);
            if (!dk.remainder.is_zero() || !dq.remainder.is_zero())
                throw NotDivisibleAt(r);
            lhs_k = std::move(dk.quotient);
            lhs_q = std::move(dq.quotient);
        }
        out.k_terms.push_back(std::move(lhs_k));
        out.q_terms.push_back(std::move(lhs_q));
    }
    return out;
}

/// Closed-form (U_k, V_k): the low-degree part of the raw sums with the
/// circle power already removed, plus sum_r 4^(2k-2r-1) K_r(4u, 4v).
inline std::array<BiPoly, 2> rebuild_from_corrections(const DiffSystem& sys, unsigned k, const Variables& target)
{
    KrDecomposition dec = kr_decomposition(sys, k);
    unsigned n = sys.degree();
    std::array<BiPoly, 2> out{BiPoly(target), BiPoly(target)};
    if (n >= k) {
        BiPoly sx = detail::weighted_form_sum(sys.p(), n, n - k, k, target);
        BiPoly sy = detail::weighted_form_sum(sys.q(), n, n - k, k, target);
        out = detail::rotate_pair(sx, sy, target);
    }
    for (unsigned r = 1; r <= k; ++r) {
        Rational w = pow(Rational(4), 2 * static_cast<long>(k) - 2 * static_cast<long>(r) - 1);
        out[0] += w * scale_arguments(dec.k_terms[r - 1], Rational(4), Rational(4), target);
        out[1] += w * scale_arguments(dec.q_terms[r - 1], Rational(4), Rational(4), target);
    }
    return out;
}

inline std::array<BiPoly, 2> rebuild_from_corrections(const DiffSystem& sys, unsigned k)
{
    return rebuild_from_corrections(sys, k, partner_variables(sys.variables()));
}

/// J(p) (P(p), Q(p)) - (U(q), V(q)) / |q|^(2m) with q the transition image of p.
/// Zero for every p away from the origin when the conjugation is correct.
inline std::array<Rational, 2> pushforward_residual(const DiffSystem& sys, const ConjugationResult& result,
                                                    const std::array<Rational, 2>& point)
{
    const Rational& a = point[0];
    const Rational& b = point[1];
    Rational r2 = a * a + b * b;
    if (r2 == 0)
        throw OriginSingularity();
    Rational qa = 4 * a / r2, qb = 4 * b / r2;
    Rational s = qa * qa + qb * qb;

    // Jacobian of p -> 4p/|p|^2: (4/|p|^2) (I - 2 p p^T / |p|^2)
    Rational f = 4 / r2;
    Rational j11 = f * (1 - 2 * a * a / r2), j12 = f * (-2 * a * b / r2);
    Rational j21 = j12, j22 = f * (1 - 2 * b * b / r2);

    Rational pv = sys.p().evaluate(a, b), qv = sys.q().evaluate(a, b);
    Rational scale = pow(s, -static_cast<long>(result.m));
    Rational uv = result.conjugate.p().evaluate(qa, qb) * scale;
    Rational vv = result.conjugate.q().evaluate(qa, qb) * scale;
    return {j11 * pv + j12 * qv - uv, j21 * pv + j22 * qv - vv};
}

} // namespace stereo

#endif // STEREO_CONJUGATE_HPP
