#ifndef STEREO_CURVES_HPP
#define STEREO_CURVES_HPP

// Exact images of circles, lines and points under the chart transition.

#include "stereo/charts.hpp"
#include "stereo/poly.hpp"
#include "stereo/rational.hpp"

#include <numeric>
#include <string>
#include <variant>

namespace stereo {

struct Circle {
    PlanePoint<Rational> center;
    Rational radius2; // stored squared so all curve algebra stays rational

    Circle(PlanePoint<Rational> c, Rational r2) : center(std::move(c)), radius2(std::move(r2))
    {
        if (radius2 <= 0)
            throw Error("circle radius^2 must be positive");
    }
    friend bool operator==(const Circle&, const Circle&) = default;
};

/// A x + B y + C = 0, kept as coprime integers with the first nonzero of A, B positive.
struct Line {
    Rational A, B, C;

    Line(Rational a, Rational b, Rational c) : A(std::move(a)), B(std::move(b)), C(std::move(c))
    {
        if (A == 0 && B == 0)
            throw Error("line needs A or B nonzero");
        normalize();
    }
    friend bool operator==(const Line&, const Line&) = default;

private:
    void normalize()
    {
        mpz_class den = 1, num = 0;
        for (const Rational* q : {&A, &B, &C}) {
            den = lcm(den, q->get_den());
            num = gcd(num, q->get_num());
        }
        Rational f(den, num);
        if ((A != 0 ? A : B) < 0)
            f = -f;
        A *= f;
        B *= f;
        C *= f;
    }
};

struct CurvePoint {
    PlanePoint<Rational> at;
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

using CurveDescriptor = std::variant<Circle, Line, CurvePoint>;

/// A mapped curve; the origin point maps to the point at infinity.
using CurveImage = std::variant<Circle, Line, CurvePoint, PointAtInfinity>;

/// Image under the transition map, by exact case analysis:
///  circle through the origin        -> line missing the origin
///  circle missing the origin        -> circle (origin-centred stays origin-centred, r^2 -> 16/r^2)
///  point                            -> transition image (origin -> infinity)
///  line through the origin          -> the same line
///  line missing the origin          -> circle through the origin
inline CurveImage map_curve(const CurveDescriptor& curve)
{
    if (const auto* c = std::get_if<Circle>(&curve)) {
        // (x + a)^2 + (y + b)^2 = r^2
        Rational a = -c->center.a, b = -c->center.b;
        Rational d = a * a + b * b - c->radius2;
        if (d == 0)
            return Line(a, b, Rational(2));
        if (a == 0 && b == 0)
            return Circle({Rational(0), Rational(0)}, Rational(16 / c->radius2));
        return Circle({Rational(-4 * a / d), Rational(-4 * b / d)}, Rational(16 * c->radius2 / (d * d)));
    }
    if (const auto* l = std::get_if<Line>(&curve)) {
        if (l->C == 0)
            return *l;
        return Circle({Rational(-2 * l->A / l->C), Rational(-2 * l->B / l->C)},
                      Rational(4 * (l->A * l->A + l->B * l->B) / (l->C * l->C)));
    }
    const auto& p = std::get<CurvePoint>(curve).at;
    if (p.a == 0 && p.b == 0)
        return PointAtInfinity{};
    return CurvePoint{transition(p)};
}

/// Implicit-equation value at p (zero iff p lies on the curve).
inline Rational curve_residual(const CurveDescriptor& curve, const PlanePoint<Rational>& p)
{
    if (const auto* c = std::get_if<Circle>(&curve)) {
        Rational da = p.a - c->center.a, db = p.b - c->center.b;
        return da * da + db * db - c->radius2;
    }
    if (const auto* l = std::get_if<Line>(&curve))
        return l->A * p.a + l->B * p.b + l->C;
    const auto& q = std::get<CurvePoint>(curve).at;
    return (p.a - q.a) * (p.a - q.a) + (p.b - q.b) * (p.b - q.b);
}

/// Human-readable equation over the given variable names, e.g. "u + 2 = 0".
inline std::string equation(const CurveImage& curve, const Variables& vars)
{
    if (const auto* l = std::get_if<Line>(&curve)) {
        BiPoly p(vars);
        p.add_term({1, 0}, l->A);
        p.add_term({0, 1}, l->B);
        p.add_term({0, 0}, l->C);
        return to_string(p) + " = 0";
    }
    if (const auto* c = std::get_if<Circle>(&curve)) {
        auto shifted = [](const std::string& v, const Rational& c0) {
            if (c0 == 0)
                return v + "^2";
            return "(" + v + (c0 > 0 ? " - " + to_string(c0) : " + " + to_string(Rational(-c0))) + ")^2";
        };
        return shifted(vars[0], c->center.a) + " + " + shifted(vars[1], c->center.b) + " = " + to_string(c->radius2);
    }
    if (const auto* p = std::get_if<CurvePoint>(&curve))
        return "(" + vars[0] + ", " + vars[1] + ") = (" + to_string(p->at.a) + ", " + to_string(p->at.b) + ")";
    return "point at infinity";
}

} // namespace stereo

#endif // STEREO_CURVES_HPP
