#ifndef STEREO_ATLAS_HPP
#define STEREO_ATLAS_HPP

// The pair of disks K(x,y), K(u,v) with trajectories of a system and of its
// conjugate, plus SVG and JSON output.

#include "stereo/analyze.hpp"
#include "stereo/charts.hpp"
#include "stereo/conjugate.hpp"
#include "stereo/curves.hpp"
#include "stereo/dynamics.hpp"
#include "stereo/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <optional>
#include <string>
#include <vector>

namespace stereo {

/// Squared radius of the disk whose image is the cap z* <= 1 - eps: 4(2-eps)/eps.
inline Rational disk_radius_squared(const Rational& eps)
{
    if (eps <= 0 || eps > 1)
        throw OutOfRange("eps must lie in (0, 1]");
    return Rational(4 * (2 - eps) / eps);
}

inline double disk_radius(const Rational& eps)
{
    return std::sqrt(disk_radius_squared(eps).get_d());
}

struct Seed {
    Chart chart = Chart::north;
    PlanePoint<double> at;
};

struct AtlasConfig {
    Rational eps1{1, 5};
    Rational eps2{1, 5};
    unsigned grid_rays = 8;
    unsigned grid_radii = 3;
    std::vector<Seed> seeds;
    std::vector<Circle> circle_markers;                // given in the (x,y) plane
    std::vector<PlanePoint<Rational>> point_markers;   // given in the (x,y) plane
    double marker_seed_offset = 0.02;                   // relative offset of seeds around circle markers
    IntegratorConfig integrator{1e-8, 1e-10, 1e-3, 0.05, 30.0, 0.0, 1e-6, 1e-12, 1e-3, true, 200000};
    unsigned disk_pixels = 400;

    /// An empty configuration: no grid, no seeds, no markers.
    static AtlasConfig empty()
    {
        AtlasConfig c;
        c.grid_rays = 0;
        c.grid_radii = 0;
        return c;
    }
};

struct EquilibriumMarker {
    PlanePoint<double> at;
    std::string label;
};

struct Arrow {
    PlanePoint<double> at;
    std::array<double, 2> direction; // unit vector
};

struct DiskChart {
    Chart chart = Chart::north;
    Variables vars;
    Rational radius2;
    double radius = 0.0;
    std::vector<Trajectory> trajectories;
    std::vector<std::size_t> seed_index; // seed of each trajectory
    std::vector<EquilibriumMarker> equilibria;
    std::vector<Arrow> arrows;
    std::vector<CurveImage> curves;
};

struct AtlasDocument {
    static constexpr int kSchemaVersion = 1;
    std::array<DiskChart, 2> disks; // the input system's disk first
    Json provenance;
};

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
inline std::string fnv1a_hex(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Json config_json(const AtlasConfig& c)
{
    Json seeds = Json::array();
    for (const auto& s : c.seeds)
        seeds.push_back({to_string(s.chart), s.at.a, s.at.b});
    Json circles = Json::array();
    for (const auto& m : c.circle_markers)
        circles.push_back(to_json(CurveImage(m)));
    Json points = Json::array();
    for (const auto& p : c.point_markers)
        points.push_back({to_string(p.a), to_string(p.b)});
    const auto& ic = c.integrator;
    return Json{{"eps1", to_string(c.eps1)},
                {"eps2", to_string(c.eps2)},
                {"grid", {c.grid_rays, c.grid_radii}},
                {"seeds", seeds},
                {"circle_markers", circles},
                {"point_markers", points},
                {"marker_seed_offset", c.marker_seed_offset},
                {"integrator",
                 {{"rtol", ic.rtol},
                  {"atol", ic.atol},
                  {"initial_step", ic.initial_step},
                  {"max_step", ic.max_step},
                  {"max_time", ic.max_time},
                  {"inner_radius", ic.inner_radius},
                  {"equilibrium_tolerance", ic.equilibrium_tolerance},
                  {"closure_tolerance", ic.closure_tolerance},
                  {"detect_closure", ic.detect_closure},
                  {"max_steps", ic.max_steps}}},
                {"disk_pixels", c.disk_pixels}};
}

namespace detail {

inline std::string equilibrium_label(const DiffSystem& sys, const std::array<Rational, 2>& p)
{
    return classify_linear(jacobian_at(sys, p)).name();
}

inline std::vector<Seed> seeds_around(const Circle& c, Chart chart, double offset)
{
    double cx = c.center.a.get_d(), cy = c.center.b.get_d(), r = std::sqrt(c.radius2.get_d());
    std::vector<Seed> out;
    for (double f : {1.0 - offset, 1.0 + offset})
        out.push_back({chart, {cx + r * f, cy}});
    return out;
}

/// Sample index nearest half of the polyline's arc length, with the local
/// chord direction there.
inline std::optional<Arrow> mid_arc_arrow(const Trajectory& t)
{
    const auto& s = t.samples;
    if (s.size() < 3)
        return std::nullopt;
    std::vector<double> acc(s.size(), 0.0);
    for (std::size_t i = 1; i < s.size(); ++i)
        acc[i] = acc[i - 1] + norm(s[i].a - s[i - 1].a, s[i].b - s[i - 1].b);
    double half = acc.back() / 2;
    if (half <= 0)
        return std::nullopt;
    std::size_t best = 1;
    for (std::size_t i = 1; i + 1 < s.size(); ++i)
        if (std::abs(acc[i] - half) < std::abs(acc[best] - half))
            best = i;
    double da = s[best + 1].a - s[best - 1].a, db = s[best + 1].b - s[best - 1].b;
    if (t.direction == Direction::backward) {
        da = -da;
        db = -db;
    }
    double n = norm(da, db);
    if (n == 0)
        return std::nullopt;
    return Arrow{{s[best].a, s[best].b}, {da / n, db / n}};
}

} // namespace detail

/// Builds both disks. Integrations run concurrently; results are stored by
/// seed index, so the document does not depend on scheduling.
inline AtlasDocument build_atlas(const DiffSystem& sys, const AtlasConfig& cfg)
{
    ConjugationResult conj = conjugate(sys);
    AtlasDocument doc;
    std::array<const DiffSystem*, 2> systems{&sys, &conj.conjugate};
    Rational r2[2] = {disk_radius_squared(cfg.eps1), disk_radius_squared(cfg.eps2)};
    for (int i = 0; i < 2; ++i) {
        auto& d = doc.disks[static_cast<std::size_t>(i)];
        d.chart = i == 0 ? Chart::north : Chart::south;
        d.vars = systems[static_cast<std::size_t>(i)]->variables();
        d.radius2 = r2[i];
        d.radius = std::sqrt(r2[i].get_d());
    }

    // seeds: polar grid per disk, explicit seeds, seeds around circle markers
    std::vector<Seed> seeds;
    for (int i = 0; i < 2; ++i) {
        const auto& d = doc.disks[static_cast<std::size_t>(i)];
        for (unsigned ring = 1; ring <= cfg.grid_radii; ++ring) {
            double rr = d.radius * ring / (cfg.grid_radii + 1);
            for (unsigned ray = 0; ray < cfg.grid_rays; ++ray) {
                double th = 2 * M_PI * ray / cfg.grid_rays;
                seeds.push_back({d.chart, {rr * std::cos(th), rr * std::sin(th)}});
            }
        }
    }
    seeds.insert(seeds.end(), cfg.seeds.begin(), cfg.seeds.end());
    for (const auto& c : cfg.circle_markers) {
        doc.disks[0].curves.push_back(c);
        for (const auto& s : detail::seeds_around(c, Chart::north, cfg.marker_seed_offset))
            seeds.push_back(s);
        CurveImage img = map_curve(c);
        doc.disks[1].curves.push_back(img);
        if (const auto* ic = std::get_if<Circle>(&img))
            for (const auto& s : detail::seeds_around(*ic, Chart::south, cfg.marker_seed_offset))
                seeds.push_back(s);
    }

    // equilibrium markers: chart origins, then configured points
    std::array<Rational, 2> origin{Rational(0), Rational(0)};
    for (int i = 0; i < 2; ++i) {
        const DiffSystem& s = *systems[static_cast<std::size_t>(i)];
        if (is_equilibrium(s, origin))
            doc.disks[static_cast<std::size_t>(i)].equilibria.push_back({{0.0, 0.0}, detail::equilibrium_label(s, origin)});
    }
    for (const auto& p : cfg.point_markers) {
        std::array<Rational, 2> at{p.a, p.b};
        if (p.a * p.a + p.b * p.b <= r2[0]) {
            std::string label = is_equilibrium(sys, at) ? detail::equilibrium_label(sys, at) : "point";
            doc.disks[0].equilibria.push_back({{p.a.get_d(), p.b.get_d()}, label});
        }
        if (p.a == 0 && p.b == 0)
            continue;
        PlanePoint<Rational> q = transition(p);
        std::array<Rational, 2> qa{q.a, q.b};
        if (q.a * q.a + q.b * q.b <= r2[1]) {
            std::string label = is_equilibrium(conj.conjugate, qa) ? detail::equilibrium_label(conj.conjugate, qa) : "point";
            doc.disks[1].equilibria.push_back({{q.a.get_d(), q.b.get_d()}, label});
        }
    }

    // integrate every seed lying in its disk, forward and backward
    std::vector<std::future<std::array<Trajectory, 2>>> jobs;
    std::vector<std::size_t> used;
    for (std::size_t idx = 0; idx < seeds.size(); ++idx) {
        const Seed seed = seeds[idx];
        std::size_t di = seed.chart == Chart::north ? 0 : 1;
        if (detail::norm(seed.at.a, seed.at.b) > doc.disks[di].radius)
            continue;
        IntegratorConfig ic = cfg.integrator;
        ic.outer_radius = doc.disks[di].radius;
        const DiffSystem* s = systems[di];
        used.push_back(idx);
        jobs.push_back(std::async(std::launch::async, [s, seed, ic] {
            return std::array<Trajectory, 2>{integrate(*s, seed.at, ic, Direction::forward, seed.chart),
                                             integrate(*s, seed.at, ic, Direction::backward, seed.chart)};
        }));
    }
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        auto pair = jobs[j].get();
        std::size_t di = seeds[used[j]].chart == Chart::north ? 0 : 1;
        for (auto& t : pair) {
            if (auto a = detail::mid_arc_arrow(t))
                doc.disks[di].arrows.push_back(*a);
            doc.disks[di].trajectories.push_back(std::move(t));
            doc.disks[di].seed_index.push_back(used[j]);
        }
    }

    Json cj = config_json(cfg);
    Json sj = to_json(sys);
    doc.provenance = Json{{"input", sj},
                          {"conjugation", to_json(conj, sys)},
                          {"config", cj},
                          {"config_hash", fnv1a_hex(sj.dump() + cj.dump())}};
    return doc;
}

inline Json to_json(const AtlasDocument& doc)
{
    Json disks = Json::array();
    for (const auto& d : doc.disks) {
        Json trajs = Json::array();
        for (std::size_t i = 0; i < d.trajectories.size(); ++i) {
            Json t = to_json(d.trajectories[i]);
            t["direction"] = to_string(d.trajectories[i].direction);
            t["seed"] = d.seed_index[i];
            trajs.push_back(std::move(t));
        }
        Json eq = Json::array();
        for (const auto& e : d.equilibria)
            eq.push_back({{"at", {e.at.a, e.at.b}}, {"label", e.label}});
        Json arrows = Json::array();
        for (const auto& a : d.arrows)
            arrows.push_back({{"at", {a.at.a, a.at.b}}, {"direction", {a.direction[0], a.direction[1]}}});
        Json curves = Json::array();
        for (const auto& c : d.curves)
            curves.push_back(to_json(c));
        disks.push_back({{"chart", to_string(d.chart)},
                         {"vars", {d.vars[0], d.vars[1]}},
                         {"radius", d.radius},
                         {"radius2", to_string(d.radius2)},
                         {"trajectories", trajs},
                         {"equilibria", eq},
                         {"arrows", arrows},
                         {"curves", curves}});
    }
    return Json{{"schema_version", AtlasDocument::kSchemaVersion}, {"disks", disks}, {"provenance", doc.provenance}};
}

inline std::vector<SpherePoint<double>> lift_to_sphere(const Trajectory& traj)
{
    std::vector<SpherePoint<double>> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples)
        out.push_back(stereo_project(traj.chart, PlanePoint<double>{s.a, s.b}));
    return out;
}

namespace detail {

class SvgWriter {
public:
    SvgWriter(double cx, double cy, double scale) : cx_(cx), cy_(cy), scale_(scale) {}

    std::string pt(double a, double b) const { return num(sx(a)) + "," + num(sy(b)); }
    double sx(double a) const { return cx_ + scale_ * a; }
    double sy(double b) const { return cy_ - scale_ * b; }
    double scale() const { return scale_; }

    static std::string num(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        std::string s = buf;
        if (s == "-0.000")
            s = "0.000";
        return s;
    }

private:
    double cx_, cy_, scale_;
};

inline void svg_polyline(std::string& out, const SvgWriter& w, const std::vector<PlanePoint<double>>& pts,
                         const char* style)
{
    if (pts.size() < 2)
        return;
    out += "<polyline ";
    out += style;
    out += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            out += ' ';
        out += w.pt(pts[i].a, pts[i].b);
    }
    out += "\"/>\n";
}

/// Runs of consecutive points inside the disk.
inline std::vector<std::vector<PlanePoint<double>>> clip_runs(const std::vector<PlanePoint<double>>& pts, double radius)
{
    std::vector<std::vector<PlanePoint<double>>> runs(1);
    for (const auto& p : pts) {
        if (norm(p.a, p.b) <= radius) {
            runs.back().push_back(p);
        } else if (!runs.back().empty()) {
            runs.emplace_back();
        }
    }
    return runs;
}

inline std::vector<PlanePoint<double>> curve_points(const CurveImage& c, double radius)
{
    std::vector<PlanePoint<double>> pts;
    if (const auto* ci = std::get_if<Circle>(&c)) {
        double x0 = ci->center.a.get_d(), y0 = ci->center.b.get_d(), r = std::sqrt(ci->radius2.get_d());
        for (int i = 0; i <= 360; ++i) {
            double th = 2 * M_PI * i / 360;
            pts.push_back({x0 + r * std::cos(th), y0 + r * std::sin(th)});
        }
    } else if (const auto* l = std::get_if<Line>(&c)) {
        double A = l->A.get_d(), B = l->B.get_d(), C = l->C.get_d();
        double n2 = A * A + B * B;
        PlanePoint<double> foot{-A * C / n2, -B * C / n2};
        std::array<double, 2> dir{-B / std::sqrt(n2), A / std::sqrt(n2)};
        for (int i = -200; i <= 200; ++i) {
            double s = radius * i / 100.0;
            pts.push_back({foot.a + s * dir[0], foot.b + s * dir[1]});
        }
    }
    return pts;
}

} // namespace detail

/// Two disks side by side. The only <circle> elements are the two disk
/// boundaries; dots, arrowheads and marker curves are paths and polylines.
inline std::string render_svg(const AtlasDocument& doc, unsigned disk_pixels = 400)
{
    const double size = disk_pixels, margin = 20.0, label = 24.0;
    const double width = 2 * size + 3 * margin, height = size + 2 * margin + label;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + detail::SvgWriter::num(width) +
           "\" height=\"" + detail::SvgWriter::num(height) + "\" viewBox=\"0 0 " + detail::SvgWriter::num(width) + " " +
           detail::SvgWriter::num(height) + "\">\n";
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& d = doc.disks[i];
        double cx = margin + size / 2 + static_cast<double>(i) * (size + margin);
        double cy = margin + label + size / 2;
        detail::SvgWriter w(cx, cy, (size / 2) / d.radius);
        using detail::SvgWriter;

        out += "<g id=\"disk-" + to_string(d.chart) + "\">\n";
        out += "<text x=\"" + SvgWriter::num(cx) + "\" y=\"" + SvgWriter::num(margin + label / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">K(" + d.vars[0] + "," + d.vars[1] +
               ")</text>\n";
        out += "<circle cx=\"" + SvgWriter::num(cx) + "\" cy=\"" + SvgWriter::num(cy) + "\" r=\"" +
               SvgWriter::num(size / 2) + "\" fill=\"none\" stroke=\"#000\" stroke-width=\"1.5\"/>\n";

        for (const auto& c : d.curves)
            for (const auto& run : detail::clip_runs(detail::curve_points(c, d.radius), d.radius))
                detail::svg_polyline(out, w, run, "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\"");

        for (const auto& t : d.trajectories) {
            std::vector<PlanePoint<double>> pts;
            pts.reserve(t.samples.size());
            for (const auto& s : t.samples)
                pts.push_back({s.a, s.b});
            detail::svg_polyline(out, w, pts, "fill=\"none\" stroke=\"#1f4e8c\" stroke-width=\"1\"");
        }

        for (const auto& a : d.arrows) {
            // arrowhead in screen space, 8px long
            double x = w.sx(a.at.a), y = w.sy(a.at.b);
            double dx = a.direction[0], dy = -a.direction[1];
            double len = 8.0, half = 3.5;
            double tx = x + dx * len / 2, ty = y + dy * len / 2;
            double bx = x - dx * len / 2, by = y - dy * len / 2;
            out += "<path d=\"M" + SvgWriter::num(tx) + "," + SvgWriter::num(ty) + " L" +
                   SvgWriter::num(bx - dy * half) + "," + SvgWriter::num(by + dx * half) + " L" +
                   SvgWriter::num(bx + dy * half) + "," + SvgWriter::num(by - dx * half) + " Z\" fill=\"#1f4e8c\"/>\n";
        }

        for (const auto& e : d.equilibria) {
            double x = w.sx(e.at.a), y = w.sy(e.at.b), r = 4.0;
            out += "<path d=\"M" + SvgWriter::num(x - r) + "," + SvgWriter::num(y) + " a" + SvgWriter::num(r) + "," +
                   SvgWriter::num(r) + " 0 1,0 " + SvgWriter::num(2 * r) + ",0 a" + SvgWriter::num(r) + "," +
                   SvgWriter::num(r) + " 0 1,0 " + SvgWriter::num(-2 * r) + ",0\" fill=\"#000\"><title>" + e.label +
                   "</title></path>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace stereo

#endif // STEREO_ATLAS_HPP
