#ifndef STEREOCONJ_CLI_HPP
#define STEREOCONJ_CLI_HPP

#include "stereo/analyze.hpp"
#include "stereo/atlas.hpp"
#include "stereo/conjugate.hpp"
#include "stereo/corpus.hpp"
#include "stereo/curves.hpp"
#include "stereo/io.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

namespace stereoconj {

using namespace stereo;

namespace detail {

inline DiffSystem load_system(const std::string& path)
{
    return parse_system(system_spec_from_string(read_file(path)));
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

inline Json symmetry_json(const DiffSystem& sys)
{
    Json j = Json::object();
    for (auto k : kAllSymmetries)
        j[to_string(k)] = check_symmetry(sys, k);
    return j;
}

/// "grid:N" (N rays, 3 radii), "grid:RxC" (R rays, C radii) or "none".
inline void apply_seed_spec(const std::string& spec, AtlasConfig& cfg)
{
    if (spec == "none") {
        cfg.grid_rays = cfg.grid_radii = 0;
        return;
    }
    if (spec.rfind("grid:", 0) != 0)
        throw Error("seed spec must be grid:N, grid:RxC or none");
    std::string body = spec.substr(5);
    auto x = body.find('x');
    try {
        std::size_t used = 0;
        if (x == std::string::npos) {
            cfg.grid_rays = static_cast<unsigned>(std::stoul(body, &used));
            if (used != body.size())
                throw std::invalid_argument(body);
        } else {
            cfg.grid_rays = static_cast<unsigned>(std::stoul(body.substr(0, x), &used));
            cfg.grid_radii = static_cast<unsigned>(std::stoul(body.substr(x + 1)));
        }
    } catch (const std::logic_error&) {
        throw Error("bad seed spec: " + spec);
    }
}

} // namespace detail

/// Parses argv and runs one subcommand. Returns 0 on success, 1 on an
/// operation error, 2 on a usage error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const std::string& embedded_corpus = {})
{
    CLI::App app{"Stereographic conjugation of planar polynomial systems"};
    app.require_subcommand(1);

    std::string input, output, json_out, corpus_path, seeds_spec = "grid:8x3", eps1 = "1/5", eps2 = "1/5";
    bool check_coprime = false;
    std::vector<std::string> circle, line, point;

    auto* c_conj = app.add_subcommand("conjugate", "conjugate system as JSON");
    c_conj->add_option("-i,--input", input, "system file (JSON or two-line text)")->required();
    c_conj->add_option("-o,--output", output, "write JSON here instead of stdout");
    c_conj->add_flag("--check-coprime", check_coprime, "warn when the conjugate pair shares a factor");

    auto* c_sym = app.add_subcommand("symmetry", "direction-field symmetries of the system and its conjugate");
    c_sym->add_option("-i,--input", input, "system file")->required();

    auto* c_inf = app.add_subcommand("infinity", "status of the point at infinity");
    c_inf->add_option("-i,--input", input, "system file")->required();

    auto* c_map = app.add_subcommand("map-curve", "image of a circle, line or point under the chart transition");
    auto* o_circle = c_map->add_option("--circle", circle, "cx cy r2")->expected(3)->allow_extra_args(false);
    auto* o_line = c_map->add_option("--line", line, "A B C for A x + B y + C = 0")->expected(3)->allow_extra_args(false);
    auto* o_point = c_map->add_option("--point", point, "px py")->expected(2)->allow_extra_args(false);
    o_circle->excludes(o_line)->excludes(o_point);
    o_line->excludes(o_point);

    auto* c_atlas = app.add_subcommand("atlas", "stereographic atlas of trajectories");
    c_atlas->add_option("-i,--input", input, "system file")->required();
    c_atlas->add_option("--eps1", eps1, "cap parameter of the first disk, rational in (0,1]");
    c_atlas->add_option("--eps2", eps2, "cap parameter of the second disk, rational in (0,1]");
    c_atlas->add_option("--seeds", seeds_spec, "grid:N, grid:RxC or none");
    c_atlas->add_option("-o,--output", output, "SVG file");
    c_atlas->add_option("--json", json_out, "atlas document JSON file");

    auto* c_verify = app.add_subcommand("verify", "check the reference corpus");
    c_verify->add_option("--corpus", corpus_path, "corpus JSON (default: built-in)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (c_conj->parsed()) {
            DiffSystem sys = detail::load_system(input);
            ConjugationResult r = conjugate(sys);
            if (check_coprime && !r.conjugate.coprime())
                err << "warning: the conjugate right-hand sides share a nonconstant factor\n";
            detail::emit(to_json(r, sys).dump(2) + "\n", output, out);
        } else if (c_sym->parsed()) {
            DiffSystem sys = detail::load_system(input);
            ConjugationResult r = conjugate(sys);
            Json j{{"input", detail::symmetry_json(sys)}, {"conjugate", detail::symmetry_json(r.conjugate)}};
            out << j.dump(2) << "\n";
        } else if (c_inf->parsed()) {
            DiffSystem sys = detail::load_system(input);
            out << to_json(infinite_point_status(sys)).dump(2) << "\n";
        } else if (c_map->parsed()) {
            std::optional<CurveDescriptor> curve;
            if (!circle.empty())
                curve = Circle({parse_rational(circle[0]), parse_rational(circle[1])}, parse_rational(circle[2]));
            else if (!line.empty())
                curve = Line(parse_rational(line[0]), parse_rational(line[1]), parse_rational(line[2]));
            else if (!point.empty())
                curve = CurvePoint{{parse_rational(point[0]), parse_rational(point[1])}};
            if (!curve) {
                err << "error: one of --circle, --line, --point is required\n";
                return 2;
            }
            CurveImage img = map_curve(*curve);
            Json j{{"input", to_json(*curve)}, {"image", to_json(img)}, {"equation", equation(img, {"u", "v"})}};
            out << j.dump(2) << "\n";
        } else if (c_atlas->parsed()) {
            DiffSystem sys = detail::load_system(input);
            AtlasConfig cfg;
            cfg.eps1 = parse_rational(eps1);
            cfg.eps2 = parse_rational(eps2);
            detail::apply_seed_spec(seeds_spec, cfg);
            AtlasDocument doc = build_atlas(sys, cfg);
            if (!json_out.empty())
                write_file(json_out, to_json(doc).dump(1) + "\n");
            if (!output.empty() || json_out.empty())
                detail::emit(render_svg(doc, cfg.disk_pixels), output, out);
        } else if (c_verify->parsed()) {
            std::string text = corpus_path.empty() ? embedded_corpus : read_file(corpus_path);
            if (text.empty())
                throw Error("no corpus available");
            auto reports = verify_corpus(load_corpus(text));
            std::size_t failed = 0, corrected = 0;
            for (const auto& r : reports) {
                const char* tag = r.status == CaseStatus::pass ? "PASS " : r.status == CaseStatus::pass_erratum ? "PASS*" : "FAIL ";
                out << tag << " " << r.id;
                if (!r.detail.empty())
                    out << "  " << r.detail;
                out << "\n";
                failed += r.status == CaseStatus::fail;
                corrected += r.status == CaseStatus::pass_erratum;
            }
            out << reports.size() - failed << "/" << reports.size() << " cases pass";
            if (corrected)
                out << " (" << corrected << " against a corrected form, marked *)";
            out << "\n";
            return failed == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace stereoconj

#endif // STEREOCONJ_CLI_HPP
