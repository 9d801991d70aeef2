#include "stereo/curves.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace stereo;

namespace {

using QPoint = PlanePoint<Rational>;

QPoint q(const Rational& a, const Rational& b)
{
    return {a, b};
}

// Rational points on a circle via the parametrisation ((1-t^2), 2t)/(1+t^2).
std::vector<QPoint> samples(const Circle& c, int count)
{
    // scale by r only when r is rational; the cases below use square radii
    mpz_class num, den;
    mpz_sqrt(num.get_mpz_t(), c.radius2.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), c.radius2.get_den_mpz_t());
    Rational r(num, den);
    EXPECT_EQ(r * r, c.radius2) << "sample generator needs a square radius";
    std::vector<QPoint> out;
    for (int i = 0; i < count; ++i) {
        Rational t = make_rational(i - count / 2, 3);
        Rational d = 1 + t * t;
        out.push_back(q(c.center.a + r * (1 - t * t) / d, c.center.b + r * 2 * t / d));
    }
    return out;
}

std::vector<QPoint> samples(const Line& l, int count)
{
    std::vector<QPoint> out;
    for (int i = 0; i < count; ++i) {
        Rational t = make_rational(2 * i - count, 3);
        if (l.B != 0)
            out.push_back(q(t, -(l.A * t + l.C) / l.B));
        else
            out.push_back(q(-l.C / l.A, t));
    }
    return out;
}

// Every sample off the origin must land on the image curve.
void expect_consistent(const CurveDescriptor& curve, const std::vector<QPoint>& pts)
{
    CurveImage img = map_curve(curve);
    int checked = 0;
    for (const auto& p : pts) {
        ASSERT_EQ(curve_residual(curve, p), 0);
        if (p.a == 0 && p.b == 0)
            continue;
        QPoint t = transition(p);
        CurveDescriptor image = std::visit(
            [](const auto& x) -> CurveDescriptor {
                if constexpr (std::is_same_v<std::decay_t<decltype(x)>, PointAtInfinity>)
                    throw std::logic_error("unexpected infinity");
                else
                    return x;
            },
            img);
        EXPECT_EQ(curve_residual(image, t), 0);
        ++checked;
    }
    EXPECT_GE(checked, 9);
}

} // namespace

TEST(MapCurve, CircleThroughOriginBecomesLine)
{
    Circle c(q(-1, 0), 1);
    EXPECT_EQ(std::get<Line>(map_curve(c)), Line(1, 0, 2));
    expect_consistent(c, samples(c, 10));
    EXPECT_EQ(equation(map_curve(c), {"u", "v"}), "u + 2 = 0");
}

TEST(MapCurve, CircleMissingOriginBecomesCircle)
{
    Circle c(q(3, 1), 4);
    auto img = std::get<Circle>(map_curve(c));
    // centre and radius from the general formula with d = |c|^2 - r^2 = 6
    EXPECT_EQ(img.center, q(2, Rational(2, 3)));
    EXPECT_EQ(img.radius2, Rational(16, 9));
    expect_consistent(c, samples(c, 10));
}

// The image of an origin-centred circle of radius r has radius 4/r, so r^2 -> 16/r^2.
TEST(MapCurve, OriginCentredCircle)
{
    Circle c(q(0, 0), 4);
    EXPECT_EQ(std::get<Circle>(map_curve(c)), Circle(q(0, 0), 4));
    Circle unit(q(0, 0), 1);
    EXPECT_EQ(std::get<Circle>(map_curve(unit)), Circle(q(0, 0), 16));
    expect_consistent(unit, samples(unit, 10));
    Circle big(q(0, 0), Rational(9, 4));
    EXPECT_EQ(std::get<Circle>(map_curve(big)), Circle(q(0, 0), Rational(64, 9)));
    expect_consistent(big, samples(big, 10));
}

TEST(MapCurve, PointsAndTheOrigin)
{
    EXPECT_EQ(std::get<CurvePoint>(map_curve(CurvePoint{q(1, 1)})).at, q(2, 2));
    EXPECT_TRUE(std::holds_alternative<PointAtInfinity>(map_curve(CurvePoint{q(0, 0)})));
    expect_consistent(CurvePoint{q(3, -2)}, std::vector<QPoint>(10, q(3, -2)));
}

TEST(MapCurve, LinesThroughOriginAreFixed)
{
    Line axis(1, 0, 0);
    EXPECT_EQ(std::get<Line>(map_curve(axis)), axis);
    expect_consistent(axis, samples(axis, 11));
    Line slope(2, -3, 0);
    EXPECT_EQ(std::get<Line>(map_curve(slope)), slope);
    expect_consistent(slope, samples(slope, 11));
}

TEST(MapCurve, LineMissingOriginBecomesCircleThroughOrigin)
{
    Line l(1, 1, -2);
    auto img = std::get<Circle>(map_curve(l));
    EXPECT_EQ(img.center, q(1, 1));
    EXPECT_EQ(img.radius2, 2);
    expect_consistent(l, samples(l, 10));
}

TEST(MapCurve, ImageOfImageIsTheCurve)
{
    Circle c(q(3, 1), 4);
    auto back = map_curve(std::get<Circle>(map_curve(c)));
    EXPECT_EQ(std::get<Circle>(back), c);
    Line l(1, 1, -2);
    EXPECT_EQ(std::get<Line>(map_curve(std::get<Circle>(map_curve(l)))), l);
}

TEST(Curves, LineNormalisation)
{
    Line l(Rational(-2, 3), Rational(4, 3), 2);
    EXPECT_EQ(l.A, 1);
    EXPECT_EQ(l.B, -2);
    EXPECT_EQ(l.C, -3);
    EXPECT_THROW(Line(0, 0, 1), Error);
    EXPECT_THROW(Circle(q(0, 0), 0), Error);
}
