#ifndef STEREO_DYNAMICS_HPP
#define STEREO_DYNAMICS_HPP

// Numerical trajectories of polynomial fields.
//
// Integration uses the Dormand-Prince 5(4) embedded pair with the usual
// proportional step control. Samples are the accepted steps; when a step
// crosses the outer disk or the origin guard, the last sample is moved
// onto the crossed circle along the chord.

#include "stereo/charts.hpp"
#include "stereo/conjugate.hpp"
#include "stereo/errors.hpp"
#include "stereo/system.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace stereo {

struct IntegratorConfig {
    double rtol = 1e-8;
    double atol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 0.05;
    double max_time = 50.0;
    double outer_radius = 10.0;
    double inner_radius = 1e-6; // origin guard
    double equilibrium_tolerance = 1e-12;
    double closure_tolerance = 1e-3;
    bool detect_closure = true;
    std::size_t max_steps = 1'000'000;

    void validate() const
    {
        if (!(rtol > 0) || !(atol > 0))
            throw OutOfRange("integrator tolerances must be positive");
        if (!(initial_step > 0) || !(max_step > 0))
            throw OutOfRange("step sizes must be positive");
        if (!(max_time > 0))
            throw OutOfRange("max integration time must be positive");
        if (!(inner_radius >= 0) || !(inner_radius < outer_radius))
            throw OutOfRange("origin guard must be smaller than the outer radius");
    }
};

enum class Termination { time_limit, exited_outer_disk, entered_origin_guard, converged_to_equilibrium, closed };
enum class Direction { forward, backward };

inline std::string to_string(Termination t)
{
    switch (t) {
    case Termination::time_limit: return "time-limit";
    case Termination::exited_outer_disk: return "exited-outer-disk";
    case Termination::entered_origin_guard: return "entered-origin-guard";
    case Termination::converged_to_equilibrium: return "converged-to-equilibrium";
    case Termination::closed: return "closed";
    }
    return "?";
}

inline std::string to_string(Direction d)
{
    return d == Direction::forward ? "forward" : "backward";
}

struct Sample {
    double t; // elapsed integration time, increasing in both directions
    double a;
    double b;
};

struct Trajectory {
    Chart chart = Chart::north;
    Direction direction = Direction::forward;
    std::vector<Sample> samples;
    Termination termination = Termination::time_limit;
};

/// Double-precision copy of a polynomial field for fast evaluation.
class FloatField {
public:
    explicit FloatField(const DiffSystem& sys)
    {
        for (int i = 0; i < 2; ++i) {
            for (const auto& [m, c] : sys.rhs(i).terms()) {
                terms_[static_cast<std::size_t>(i)].push_back({m.first, m.second, c.get_d()});
                max_a_ = std::max(max_a_, m.first);
                max_b_ = std::max(max_b_, m.second);
            }
        }
    }

    std::array<double, 2> operator()(double a, double b) const
    {
        std::array<double, 16> pa{}, pb{};
        std::vector<double> big_a, big_b;
        double* ta = pa.data();
        double* tb = pb.data();
        if (max_a_ >= pa.size()) {
            big_a.resize(max_a_ + 1);
            ta = big_a.data();
        }
        if (max_b_ >= pb.size()) {
            big_b.resize(max_b_ + 1);
            tb = big_b.data();
        }
        ta[0] = tb[0] = 1.0;
        for (unsigned i = 1; i <= max_a_; ++i)
            ta[i] = ta[i - 1] * a;
        for (unsigned i = 1; i <= max_b_; ++i)
            tb[i] = tb[i - 1] * b;
        std::array<double, 2> out{0.0, 0.0};
        for (std::size_t i = 0; i < 2; ++i)
            for (const auto& t : terms_[i])
                out[i] += t.c * ta[t.i] * tb[t.j];
        if (!std::isfinite(out[0]) || !std::isfinite(out[1]))
            throw NumericOverflow();
        return out;
    }

private:
    struct Term {
        unsigned i, j;
        double c;
    };
    std::array<std::vector<Term>, 2> terms_;
    unsigned max_a_ = 0, max_b_ = 0;
};

inline std::array<double, 2> field_eval(const DiffSystem& sys, const PlanePoint<double>& p)
{
    return FloatField(sys)(p.a, p.b);
}

namespace detail {

template <std::size_t N>
using State = std::array<double, N>;

template <std::size_t N>
State<N> axpy(const State<N>& y, double h, std::initializer_list<std::pair<double, const State<N>*>> terms)
{
    State<N> out = y;
    for (const auto& [c, k] : terms)
        for (std::size_t i = 0; i < N; ++i)
            out[i] += h * c * (*k)[i];
    return out;
}

/// One Dormand-Prince 5(4) step; returns the fifth-order solution and the
/// scaled RMS error estimate (accept when <= 1).
template <std::size_t N, class Rhs>
std::pair<State<N>, double> dopri_step(const Rhs& f, const State<N>& y, const State<N>& k1, double h, double rtol,
                                       double atol)
{
    State<N> k2 = f(axpy<N>(y, h, {{1.0 / 5, &k1}}));
    State<N> k3 = f(axpy<N>(y, h, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}));
    State<N> k4 = f(axpy<N>(y, h, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}));
    State<N> k5 = f(axpy<N>(y, h,
                            {{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2}, {64448.0 / 6561, &k3}, {-212.0 / 729, &k4}}));
    State<N> k6 = f(axpy<N>(y, h,
                            {{9017.0 / 3168, &k1},
                             {-355.0 / 33, &k2},
                             {46732.0 / 5247, &k3},
                             {49.0 / 176, &k4},
                             {-5103.0 / 18656, &k5}}));
    State<N> y5 = axpy<N>(y, h,
                          {{35.0 / 384, &k1}, {500.0 / 1113, &k3}, {125.0 / 192, &k4}, {-2187.0 / 6784, &k5}, {11.0 / 84, &k6}});
    State<N> k7 = f(y5);
    // difference between the fifth- and fourth-order weights
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                     e7 = -1.0 / 40;
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        acc += (err / scale) * (err / scale);
    }
    return {y5, std::sqrt(acc / static_cast<double>(N))};
}

/// Shortened step h* in (0, h] whose end state satisfies g(state) = target,
/// given that g changes sides of target over the full step. Regula falsi
/// with the Illinois modification on the step length.
template <std::size_t N, class Rhs, class G>
std::pair<State<N>, double> land_step(const Rhs& f, const State<N>& y, const State<N>& k1, double h, const G& g,
                                      double target, double rtol, double atol)
{
    double lo = 0.0, hi = h;
    double glo = g(y) - target;
    State<N> yhi = dopri_step<N>(f, y, k1, h, rtol, atol).first;
    double ghi = g(yhi) - target;
    State<N> best = yhi;
    double best_h = h;
    int side = 0;
    for (int it = 0; it < 100; ++it) {
        double hm = (glo == ghi) ? 0.5 * (lo + hi) : lo - glo * (hi - lo) / (ghi - glo);
        if (!(hm > lo && hm < hi))
            hm = 0.5 * (lo + hi);
        State<N> ym = dopri_step<N>(f, y, k1, hm, rtol, atol).first;
        double gm = g(ym) - target;
        best = ym;
        best_h = hm;
        if (std::abs(gm) <= 1e-14 * std::max(1.0, std::abs(target)) || hi - lo <= 1e-15 * h)
            break;
        if ((gm > 0) == (ghi > 0)) {
            hi = hm;
            ghi = gm;
            if (side == -1)
                glo *= 0.5;
            side = -1;
        } else {
            lo = hm;
            glo = gm;
            if (side == 1)
                ghi *= 0.5;
            side = 1;
        }
    }
    return {best, best_h};
}

inline double step_factor(double err)
{
    if (err == 0.0)
        return 5.0;
    return std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
}

inline double norm(double a, double b)
{
    return std::hypot(a, b);
}

inline double point_segment_distance(double pa, double pb, double a0, double b0, double a1, double b1)
{
    double da = a1 - a0, db = b1 - b0;
    double len2 = da * da + db * db;
    double lam = len2 > 0 ? std::clamp(((pa - a0) * da + (pb - b0) * db) / len2, 0.0, 1.0) : 0.0;
    return norm(pa - (a0 + lam * da), pb - (b0 + lam * db));
}

/// Cubic Hermite point on a step of length h with endpoint derivatives d0, d1.
inline PlanePoint<double> hermite(const Sample& s0, const std::array<double, 2>& d0, const Sample& s1,
                                  const std::array<double, 2>& d1, double theta)
{
    double h = s1.t - s0.t;
    double t2 = theta * theta, t3 = t2 * theta;
    double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + theta, h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return {h00 * s0.a + h10 * h * d0[0] + h01 * s1.a + h11 * h * d1[0],
            h00 * s0.b + h10 * h * d0[1] + h01 * s1.b + h11 * h * d1[1]};
}

inline double angle_between(const std::array<double, 2>& u, const std::array<double, 2>& v)
{
    double nu = norm(u[0], u[1]), nv = norm(v[0], v[1]);
    if (nu == 0 || nv == 0)
        return M_PI;
    double c = std::clamp((u[0] * v[0] + u[1] * v[1]) / (nu * nv), -1.0, 1.0);
    return std::acos(c);
}

constexpr double kClosureAngle = 5.0 * M_PI / 180.0;

} // namespace detail

/// Integrates from `start` until one of the configured stop conditions.
/// Backward integration follows the negated field; sample times still increase.
inline Trajectory integrate(const DiffSystem& sys, const PlanePoint<double>& start, const IntegratorConfig& cfg,
                            Direction direction, Chart chart = Chart::north)
{
    cfg.validate();
    if (detail::norm(start.a, start.b) > cfg.outer_radius)
        throw OutOfRange("start point lies outside the outer disk");

    FloatField field(sys);
    const double sign = direction == Direction::forward ? 1.0 : -1.0;
    auto rhs = [&](const detail::State<2>& y) {
        auto f = field(y[0], y[1]);
        return detail::State<2>{sign * f[0], sign * f[1]};
    };

    Trajectory traj;
    traj.chart = chart;
    traj.direction = direction;
    traj.samples.push_back({0.0, start.a, start.b});

    detail::State<2> y{start.a, start.b};
    detail::State<2> k1 = rhs(y);
    const auto f0 = k1;
    if (detail::norm(k1[0], k1[1]) <= cfg.equilibrium_tolerance) {
        traj.termination = Termination::converged_to_equilibrium;
        return traj;
    }
    if (detail::norm(y[0], y[1]) < cfg.inner_radius) {
        traj.termination = Termination::entered_origin_guard;
        return traj;
    }

    double t = 0.0;
    double h = std::min(cfg.initial_step, cfg.max_step);
    bool left_start = false;
    for (std::size_t steps = 0; steps < cfg.max_steps; ++steps) {
        if (t >= cfg.max_time) {
            traj.termination = Termination::time_limit;
            return traj;
        }
        h = std::min({h, cfg.max_step, cfg.max_time - t});
        auto [y5, err] = detail::dopri_step<2>(rhs, y, k1, h, cfg.rtol, cfg.atol);
        if (!std::isfinite(err) || !std::isfinite(y5[0]) || !std::isfinite(y5[1]))
            err = std::numeric_limits<double>::infinity();
        if (err > 1.0) {
            h *= std::max(0.2, std::isfinite(err) ? detail::step_factor(err) : 0.2);
            if (h < 1e-14 * std::max(1.0, t))
                throw StepUnderflow(t);
            continue;
        }

        double r1 = detail::norm(y5[0], y5[1]);
        if (r1 > cfg.outer_radius || r1 < cfg.inner_radius) {
            bool outer = r1 > cfg.outer_radius;
            auto radius = [](const detail::State<2>& z) { return detail::norm(z[0], z[1]); };
            auto [yb, hb] = detail::land_step<2>(rhs, y, k1, h, radius, outer ? cfg.outer_radius : cfg.inner_radius,
                                                 cfg.rtol, cfg.atol);
            traj.samples.push_back({t + hb, yb[0], yb[1]});
            traj.termination = outer ? Termination::exited_outer_disk : Termination::entered_origin_guard;
            return traj;
        }

        detail::State<2> k_next = rhs(y5);
        Sample prev = traj.samples.back();
        Sample cur{t + h, y5[0], y5[1]};
        traj.samples.push_back(cur);

        if (cfg.detect_closure) {
            double d = detail::norm(cur.a - start.a, cur.b - start.b);
            if (left_start) {
                // closest approach of the Hermite arc to the start point
                PlanePoint<double> last{prev.a, prev.b};
                constexpr int pieces = 32;
                for (int i = 1; i <= pieces; ++i) {
                    double th = static_cast<double>(i) / pieces;
                    PlanePoint<double> q = detail::hermite(prev, k1, cur, k_next, th);
                    if (detail::point_segment_distance(start.a, start.b, last.a, last.b, q.a, q.b) < cfg.closure_tolerance &&
                        detail::angle_between(k_next, f0) < detail::kClosureAngle) {
                        traj.termination = Termination::closed;
                        return traj;
                    }
                    last = q;
                }
            }
            if (d > 2 * cfg.closure_tolerance)
                left_start = true;
        }

        t += h;
        y = y5;
        k1 = k_next;
        if (detail::norm(k1[0], k1[1]) <= cfg.equilibrium_tolerance) {
            traj.termination = Termination::converged_to_equilibrium;
            return traj;
        }
        h *= detail::step_factor(err);
    }
    traj.termination = Termination::time_limit;
    return traj;
}

/// Whether the samples return within tol of the start, after leaving a
/// 2*tol neighbourhood, heading within 5 degrees of the initial direction.
inline bool detect_closed(const Trajectory& traj, double tol)
{
    const auto& s = traj.samples;
    if (s.size() < 10)
        throw std::invalid_argument("closure detection needs at least 10 samples");
    std::array<double, 2> d0{s[1].a - s[0].a, s[1].b - s[0].b};
    bool left = false;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (!left) {
            left = detail::norm(s[i].a - s[0].a, s[i].b - s[0].b) > 2 * tol;
            continue;
        }
        std::array<double, 2> di{s[i + 1].a - s[i].a, s[i + 1].b - s[i].b};
        if (detail::point_segment_distance(s[0].a, s[0].b, s[i].a, s[i].b, s[i + 1].a, s[i + 1].b) < tol &&
            detail::angle_between(di, d0) < detail::kClosureAngle)
            return true;
    }
    return false;
}

/// Integrates the conjugate system in its own time tau together with the
/// clock dt/dtau = (u^2+v^2)^m, stopping when the clock reaches `until`.
/// Sample times are clock values, i.e. the time of the original system.
inline Trajectory integrate_with_clock(const ConjugationResult& result, const PlanePoint<double>& start, double until,
                                       const IntegratorConfig& cfg)
{
    FloatField field(result.conjugate);
    const int m = static_cast<int>(result.m);
    auto rhs = [&](const detail::State<3>& y) {
        auto f = field(y[0], y[1]);
        double s = y[0] * y[0] + y[1] * y[1];
        return detail::State<3>{f[0], f[1], std::pow(s, m)};
    };

    Trajectory traj;
    traj.chart = Chart::south;
    traj.samples.push_back({0.0, start.a, start.b});
    detail::State<3> y{start.a, start.b, 0.0};
    auto k1 = rhs(y);
    if (until <= 0.0 || detail::norm(k1[0], k1[1]) <= cfg.equilibrium_tolerance) {
        traj.termination = Termination::converged_to_equilibrium;
        return traj;
    }
    double tau = 0.0, h = std::min(cfg.initial_step, cfg.max_step);
    for (std::size_t steps = 0; steps < cfg.max_steps; ++steps) {
        h = std::min(h, cfg.max_step);
        auto [y5, err] = detail::dopri_step<3>(rhs, y, k1, h, cfg.rtol, cfg.atol);
        if (!(err <= 1.0)) {
            h *= std::isfinite(err) ? detail::step_factor(err) : 0.2;
            if (h < 1e-14 * std::max(1.0, tau))
                throw StepUnderflow(tau);
            continue;
        }
        if (y5[2] >= until) {
            auto clock = [](const detail::State<3>& z) { return z[2]; };
            y5 = detail::land_step<3>(rhs, y, k1, h, clock, until, cfg.rtol, cfg.atol).first;
            traj.samples.push_back({until, y5[0], y5[1]});
            traj.termination = Termination::time_limit;
            return traj;
        }
        tau += h;
        y = y5;
        k1 = rhs(y);
        traj.samples.push_back({y[2], y[0], y[1]});
        if (detail::norm(y[0], y[1]) < cfg.inner_radius) {
            traj.termination = Termination::entered_origin_guard;
            return traj;
        }
        h *= detail::step_factor(err);
    }
    traj.termination = Termination::time_limit;
    return traj;
}

namespace detail {

/// Cubic Hermite evaluation of a sampled curve at time t, with endpoint
/// derivatives supplied by `deriv`. Times outside the samples clamp.
template <class Deriv>
PlanePoint<double> evaluate_at(const std::vector<Sample>& s, const Deriv& deriv, double t)
{
    if (t <= s.front().t || s.size() == 1)
        return {s.front().a, s.front().b};
    if (t >= s.back().t)
        return {s.back().a, s.back().b};
    auto it = std::upper_bound(s.begin(), s.end(), t, [](double v, const Sample& x) { return v < x.t; });
    const Sample& s1 = *it;
    const Sample& s0 = *(it - 1);
    double theta = (t - s0.t) / (s1.t - s0.t);
    return hermite(s0, deriv(s0), s1, deriv(s1), theta);
}

} // namespace detail

/// Distance between the transition image of a trajectory of `sys` and the
/// trajectory of the conjugate system started at the image point, over the
/// same span of the original time.
///
/// Both curves are parametrised by the original time (the conjugate one
/// through its clock), so points are matched by time on the union of both
/// sample grids and their midpoints. The largest matched distance bounds
/// the Hausdorff distance of the two point sets from above.
inline double conjugacy_residual(const DiffSystem& sys, const ConjugationResult& result, const PlanePoint<double>& start,
                                 const IntegratorConfig& cfg)
{
    if (detail::norm(start.a, start.b) <= cfg.inner_radius)
        throw std::invalid_argument("start lies inside the origin guard");
    PlanePoint<double> image = transition(start);
    if (detail::norm(image.a, image.b) <= cfg.inner_radius)
        throw std::invalid_argument("start image lies inside the origin guard");

    Trajectory orig = integrate(sys, start, cfg, Direction::forward, Chart::north);
    double span = orig.samples.back().t;
    Trajectory conj = integrate_with_clock(result, image, span, cfg);

    FloatField f_orig(sys), f_conj(result.conjugate);
    const int m = static_cast<int>(result.m);
    auto d_orig = [&](const Sample& x) { return f_orig(x.a, x.b); };
    auto d_conj = [&](const Sample& x) {
        auto f = f_conj(x.a, x.b);
        double w = std::pow(x.a * x.a + x.b * x.b, m);
        return std::array<double, 2>{f[0] / w, f[1] / w};
    };

    std::vector<double> times;
    for (const auto* tr : {&orig, &conj}) {
        const auto& s = tr->samples;
        for (std::size_t i = 0; i < s.size(); ++i) {
            times.push_back(s[i].t);
            if (i + 1 < s.size())
                times.push_back(0.5 * (s[i].t + s[i + 1].t));
        }
    }
    double worst = 0.0;
    for (double t : times) {
        PlanePoint<double> p = transition(detail::evaluate_at(orig.samples, d_orig, t));
        PlanePoint<double> q = detail::evaluate_at(conj.samples, d_conj, t);
        worst = std::max(worst, detail::norm(p.a - q.a, p.b - q.b));
    }
    return worst;
}

} // namespace stereo

#endif // STEREO_DYNAMICS_HPP
