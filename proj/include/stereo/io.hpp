#ifndef STEREO_IO_HPP
#define STEREO_IO_HPP

// JSON forms of systems, conjugation results, curves and trajectories.

#include "stereo/analyze.hpp"
#include "stereo/conjugate.hpp"
#include "stereo/curves.hpp"
#include "stereo/dynamics.hpp"
#include "stereo/parse.hpp"
#include "stereo/system.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace stereo {

using Json = nlohmann::ordered_json;

inline SystemSpec system_spec_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("rhs"))
        throw Error("system JSON needs an \"rhs\" array");
    SystemSpec spec;
    if (j.contains("vars")) {
        const auto& v = j.at("vars");
        if (!v.is_array() || v.size() != 2)
            throw Error("\"vars\" must hold two names");
        spec.vars = {v[0].get<std::string>(), v[1].get<std::string>()};
    }
    const auto& r = j.at("rhs");
    if (!r.is_array() || r.size() != 2)
        throw Error("\"rhs\" must hold two expressions");
    spec.rhs = {r[0].get<std::string>(), r[1].get<std::string>()};
    return spec;
}

inline Json to_json(const SystemSpec& spec)
{
    return Json{{"vars", {spec.vars[0], spec.vars[1]}}, {"rhs", {spec.rhs[0], spec.rhs[1]}}};
}

inline Json to_json(const DiffSystem& sys)
{
    const auto& v = sys.variables();
    return Json{{"vars", {v[0], v[1]}}, {"rhs", {to_string(sys.p()), to_string(sys.q())}}};
}

/// JSON object or the two-line "dx/dt = ..." text form, chosen by the first
/// non-blank character.
inline SystemSpec system_spec_from_string(const std::string& text)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw Error(std::string("invalid JSON: ") + e.what());
        }
        return system_spec_from_json(j);
    }
    return system_spec_from_text(text);
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << content;
}

inline Json to_json(const ConjugationResult& r, const DiffSystem& input)
{
    return Json{{"n", input.degree()},
                {"k", r.k},
                {"m", r.m},
                {"U", to_string(r.conjugate.p())},
                {"V", to_string(r.conjugate.q())},
                {"coprime", r.conjugate.coprime()},
                {"time_relation", r.time_relation()}};
}

inline Json matrix_json(const Matrix2& m)
{
    Json out = Json::array();
    for (const auto& row : m)
        out.push_back({to_string(row[0]), to_string(row[1])});
    return out;
}

inline Json to_json(const InfinityStatus& s)
{
    return Json{{"status", s.regular ? "regular" : "equilibrium"},
                {"class", s.type ? Json(s.type->name()) : Json(nullptr)},
                {"conjugate_linear_part", matrix_json(s.conjugate_linear_part)}};
}

namespace detail {

inline Rational rational_field(const Json& j, const char* key)
{
    const auto& v = j.at(key);
    if (v.is_string())
        return parse_rational(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(v.get<long>());
    throw Error(std::string("field \"") + key + "\" must be a rational string");
}

inline PlanePoint<Rational> point_field(const Json& j, const char* key)
{
    const auto& v = j.at(key);
    if (!v.is_array() || v.size() != 2)
        throw Error(std::string("field \"") + key + "\" must be a pair");
    auto one = [](const Json& x) {
        return x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long>());
    };
    return {one(v[0]), one(v[1])};
}

inline Json point_json(const PlanePoint<Rational>& p)
{
    return Json::array({to_string(p.a), to_string(p.b)});
}

} // namespace detail

inline CurveDescriptor curve_from_json(const Json& j)
{
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "circle")
        return Circle(detail::point_field(j, "center"), detail::rational_field(j, "radius2"));
    if (kind == "line")
        return Line(detail::rational_field(j, "A"), detail::rational_field(j, "B"), detail::rational_field(j, "C"));
    if (kind == "point")
        return CurvePoint{detail::point_field(j, "at")};
    throw Error("unknown curve kind \"" + kind + "\"");
}

inline Json to_json(const CurveImage& c)
{
    if (const auto* ci = std::get_if<Circle>(&c))
        return Json{{"kind", "circle"}, {"center", detail::point_json(ci->center)}, {"radius2", to_string(ci->radius2)}};
    if (const auto* l = std::get_if<Line>(&c))
        return Json{{"kind", "line"}, {"A", to_string(l->A)}, {"B", to_string(l->B)}, {"C", to_string(l->C)}};
    if (const auto* p = std::get_if<CurvePoint>(&c))
        return Json{{"kind", "point"}, {"at", detail::point_json(p->at)}};
    return Json{{"kind", "infinity"}};
}

inline Json to_json(const CurveDescriptor& c)
{
    return std::visit([](const auto& x) { return to_json(CurveImage(x)); }, c);
}

inline Json to_json(const Trajectory& t)
{
    Json samples = Json::array();
    for (const auto& s : t.samples)
        samples.push_back({s.t, s.a, s.b});
    return Json{{"chart", to_string(t.chart)}, {"termination", to_string(t.termination)}, {"samples", std::move(samples)}};
}

} // namespace stereo

#endif // STEREO_IO_HPP
