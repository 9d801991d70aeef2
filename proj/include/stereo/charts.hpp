#ifndef STEREO_CHARTS_HPP
#define STEREO_CHARTS_HPP

// Sphere geometry of the two-chart stereographic atlas.
//
// The unit sphere touches the plane Oxy at the south pole and the plane
// O*uv at the north pole. The N-chart projects Oxy from N, the S-chart
// projects O*uv from S; the transition between the charts is the
// inversion p -> 4p/|p|^2 in both directions.
//
// Everything here is templated on the scalar so the same formulas run
// exactly over Rational and approximately over double.

#include "stereo/errors.hpp"
#include "stereo/rational.hpp"

#include <array>
#include <cmath>
#include <string>
#include <variant>

namespace stereo {

enum class Chart {
    north, // plane Oxy, projection centre N(0,0,1)
    south, // plane O*uv, projection centre S(0,0,-1)
};

inline Chart other(Chart c)
{
    return c == Chart::north ? Chart::south : Chart::north;
}

inline std::string to_string(Chart c)
{
    return c == Chart::north ? "N" : "S";
}

template <class T>
struct PlanePoint {
    T a{};
    T b{};
    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

template <class T>
struct SpherePoint {
    T x{};
    T y{};
    T z{};
    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

/// The point of an extended plane that is not in the plane itself.
struct PointAtInfinity {
    friend bool operator==(const PointAtInfinity&, const PointAtInfinity&) = default;
};

using ExtendedPoint = std::variant<PlanePoint<Rational>, PointAtInfinity>;

template <class T>
SpherePoint<T> stereo_project(Chart chart, const PlanePoint<T>& p)
{
    T s = p.a * p.a + p.b * p.b;
    T d = s + T(4);
    T z = (s - T(4)) / d;
    if (chart == Chart::south)
        z = -z;
    return {T(4) * p.a / d, T(4) * p.b / d, z};
}

/// Inverse of stereo_project; throws PoleExcluded at the chart's projection centre.
template <class T>
PlanePoint<T> chart_project(Chart chart, const SpherePoint<T>& sp)
{
    T d = chart == Chart::north ? T(T(1) - sp.z) : T(T(1) + sp.z);
    if (!(d > T(0)))
        throw PoleExcluded();
    return {T(2) * sp.x / d, T(2) * sp.y / d};
}

/// p -> 4p / |p|^2. The map is its own inverse, so the same formula serves
/// both directions between the charts.
template <class T>
PlanePoint<T> transition(const PlanePoint<T>& p)
{
    T s = p.a * p.a + p.b * p.b;
    if (s == T(0))
        throw OriginSingularity();
    return {T(4) * p.a / s, T(4) * p.b / s};
}

template <class T>
PlanePoint<T> transition(Chart /*from*/, const PlanePoint<T>& p)
{
    return transition(p);
}

/// Extension to the extended planes: origin <-> point at infinity.
inline ExtendedPoint transition(const ExtendedPoint& p)
{
    if (std::holds_alternative<PointAtInfinity>(p))
        return PlanePoint<Rational>{};
    const auto& q = std::get<PlanePoint<Rational>>(p);
    if (q.a == 0 && q.b == 0)
        return PointAtInfinity{};
    return transition(q);
}

/// Jacobian matrix of the transition map at p (row-major).
template <class T>
std::array<std::array<T, 2>, 2> transition_jacobian(const PlanePoint<T>& p)
{
    T s = p.a * p.a + p.b * p.b;
    if (s == T(0))
        throw OriginSingularity();
    T f = T(4) / s;
    T off = -T(2) * p.a * p.b / s;
    return {{{f * (T(1) - T(2) * p.a * p.a / s), f * off}, {f * off, f * (T(1) - T(2) * p.b * p.b / s)}}};
}

/// The 2x2 minors D(x*,y*), D(x*,z*), D(y*,z*) of the projection's Jacobian.
template <class T>
std::array<T, 3> psi_jacobians(Chart chart, const PlanePoint<T>& p)
{
    T s = p.a * p.a + p.b * p.b;
    T d = s + T(4);
    T d3 = d * d * d;
    T sign = chart == Chart::north ? T(1) : T(-1);
    return {T(-16) * (s - T(4)) / d3, sign * T(64) * p.b / d3, -sign * T(64) * p.a / d3};
}

} // namespace stereo

#endif // STEREO_CHARTS_HPP
