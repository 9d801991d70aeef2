#include "stereo/charts.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace stereo;

namespace {

using QPoint = PlanePoint<Rational>;
using QSphere = SpherePoint<Rational>;

QPoint q(long a, long b)
{
    return {Rational(a), Rational(b)};
}

QPoint random_qpoint(std::mt19937_64& rng)
{
    return {testing_support::random_rational(rng, 30, 11), testing_support::random_rational(rng, 30, 11)};
}

} // namespace

TEST(StereoProject, Examples)
{
    EXPECT_EQ(stereo_project(Chart::north, q(0, 0)), (QSphere{0, 0, -1}));
    EXPECT_EQ(stereo_project(Chart::north, q(2, 0)), (QSphere{1, 0, 0}));
    EXPECT_EQ(stereo_project(Chart::south, q(0, 0)), (QSphere{0, 0, 1}));
}

TEST(ChartProject, Examples)
{
    EXPECT_EQ(chart_project(Chart::north, QSphere{1, 0, 0}), q(2, 0));
    EXPECT_THROW(chart_project(Chart::north, QSphere{0, 0, 1}), PoleExcluded);
    EXPECT_EQ(chart_project(Chart::south, QSphere{0, 0, 1}), q(0, 0));
    EXPECT_THROW(chart_project(Chart::south, QSphere{0, 0, -1}), PoleExcluded);
}

TEST(Transition, Examples)
{
    EXPECT_EQ(transition(q(2, 0)), q(2, 0));
    EXPECT_EQ(transition(q(1, 0)), q(4, 0));
    EXPECT_THROW(transition(q(0, 0)), OriginSingularity);
}

TEST(Transition, ExtendedPlaneSwapsOriginAndInfinity)
{
    EXPECT_TRUE(std::holds_alternative<PointAtInfinity>(transition(ExtendedPoint{q(0, 0)})));
    EXPECT_EQ(std::get<QPoint>(transition(ExtendedPoint{PointAtInfinity{}})), q(0, 0));
    EXPECT_EQ(std::get<QPoint>(transition(ExtendedPoint{q(1, 1)})), q(2, 2));
}

TEST(PsiJacobians, Examples)
{
    auto j0 = psi_jacobians(Chart::north, q(0, 0));
    EXPECT_EQ(j0, (std::array<Rational, 3>{1, 0, 0}));
    auto j2 = psi_jacobians(Chart::north, q(2, 0));
    EXPECT_EQ(j2, (std::array<Rational, 3>{0, 0, Rational(-1, 4)}));
}

TEST(ChartProperties, ExactIdentitiesOnRandomPoints)
{
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
        QPoint p = random_qpoint(rng);
        for (Chart c : {Chart::north, Chart::south}) {
            QSphere sp = stereo_project(c, p);
            EXPECT_EQ(sp.x * sp.x + sp.y * sp.y + sp.z * sp.z, 1);
            EXPECT_EQ(chart_project(c, sp), p);
            auto j = psi_jacobians(c, p);
            EXPECT_FALSE(j[0] == 0 && j[1] == 0 && j[2] == 0);
        }
        if (p.a == 0 && p.b == 0)
            continue;
        EXPECT_EQ(transition(transition(p)), p);
        // the transition is the north projection followed by the south chart
        EXPECT_EQ(transition(p), chart_project(Chart::south, stereo_project(Chart::north, p)));
    }
}

TEST(ChartProperties, JacobiansMatchFiniteDifferences)
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> coord(-5, 5);
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
        PlanePoint<double> p{coord(rng), coord(rng)};
        for (Chart c : {Chart::north, Chart::south}) {
            auto da = [&](double sa, double sb) {
                auto plus = stereo_project(c, PlanePoint<double>{p.a + sa * h, p.b + sb * h});
                auto minus = stereo_project(c, PlanePoint<double>{p.a - sa * h, p.b - sb * h});
                return std::array<double, 3>{(plus.x - minus.x) / (2 * h), (plus.y - minus.y) / (2 * h),
                                             (plus.z - minus.z) / (2 * h)};
            };
            auto ga = da(1, 0), gb = da(0, 1); // columns d/da, d/db of (x*, y*, z*)
            std::array<double, 3> fd{ga[0] * gb[1] - ga[1] * gb[0], ga[0] * gb[2] - ga[2] * gb[0],
                                     ga[1] * gb[2] - ga[2] * gb[1]};
            auto exact = psi_jacobians(c, p);
            double scale = std::max({std::abs(exact[0]), std::abs(exact[1]), std::abs(exact[2])});
            for (int k = 0; k < 3; ++k)
                EXPECT_LT(std::abs(fd[static_cast<std::size_t>(k)] - exact[static_cast<std::size_t>(k)]) / scale, 1e-6);
        }
    }
}

TEST(ChartProperties, TransitionJacobianMatchesFiniteDifferences)
{
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> coord(-3, 3);
    const double h = 1e-6;
    for (int i = 0; i < 50; ++i) {
        PlanePoint<double> p{coord(rng), coord(rng)};
        if (std::hypot(p.a, p.b) < 0.1)
            continue;
        auto j = transition_jacobian(p);
        for (int col = 0; col < 2; ++col) {
            PlanePoint<double> lo = p, hi = p;
            (col == 0 ? lo.a : lo.b) -= h;
            (col == 0 ? hi.a : hi.b) += h;
            auto tl = transition(lo), th = transition(hi);
            EXPECT_NEAR((th.a - tl.a) / (2 * h), j[0][static_cast<std::size_t>(col)], 1e-5);
            EXPECT_NEAR((th.b - tl.b) / (2 * h), j[1][static_cast<std::size_t>(col)], 1e-5);
        }
    }
}

// The transition Jacobian is a scalar times an orthogonal reflection, so angles are kept.
TEST(ChartProperties, TransitionIsConformal)
{
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> coord(-4, 4), angle(0, M_PI);
    for (int i = 0; i < 100; ++i) {
        PlanePoint<double> p{coord(rng), coord(rng)};
        if (std::hypot(p.a, p.b) < 1e-3)
            continue;
        double t1 = angle(rng), t2 = angle(rng);
        auto j = transition_jacobian(p);
        auto image = [&](double t) {
            double da = std::cos(t), db = std::sin(t);
            return std::array<double, 2>{j[0][0] * da + j[0][1] * db, j[1][0] * da + j[1][1] * db};
        };
        auto u = image(t1), v = image(t2);
        double before = std::abs(std::remainder(t1 - t2, M_PI));
        double after = std::abs(std::remainder(std::atan2(u[1], u[0]) - std::atan2(v[1], v[0]), M_PI));
        EXPECT_NEAR(after, before, 1e-9);
    }
}
