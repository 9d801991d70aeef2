#ifndef STEREO_SYSTEM_HPP
#define STEREO_SYSTEM_HPP

#include "stereo/errors.hpp"
#include "stereo/parse.hpp"
#include "stereo/poly.hpp"

#include <array>
#include <cctype>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

namespace stereo {

/// Textual form of a planar system: d(vars[i])/dt = rhs[i].
struct SystemSpec {
    Variables vars{"x", "y"};
    std::array<std::string, 2> rhs;
};

/// Planar polynomial system dx/dt = P, dy/dt = Q.
class DiffSystem {
public:
    DiffSystem(BiPoly p, BiPoly q) : p_(std::move(p)), q_(std::move(q))
    {
        if (p_.variables() != q_.variables())
            throw VariableMismatch(to_string(p_.variables()), to_string(q_.variables()));
        if (p_.is_zero() && q_.is_zero())
            throw BothRhsZero();
        degree_ = static_cast<unsigned>(std::max(p_.total_degree(), q_.total_degree()));
        coprime_ = is_coprime(p_, q_);
    }

    const Variables& variables() const { return p_.variables(); }
    const BiPoly& p() const { return p_; }
    const BiPoly& q() const { return q_; }
    const BiPoly& rhs(int i) const { return i == 0 ? p_ : q_; }

    /// n = max total degree of the right-hand sides.
    unsigned degree() const { return degree_; }

    /// Whether P and Q share no nonconstant factor (recorded, not enforced).
    bool coprime() const { return coprime_; }

    friend bool operator==(const DiffSystem& a, const DiffSystem& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

private:
    BiPoly p_, q_;
    unsigned degree_ = 0;
    bool coprime_ = true;
};

inline DiffSystem parse_system(const SystemSpec& spec)
{
    validate_variables(spec.vars);
    for (const auto& e : spec.rhs)
        if (e.find_first_not_of(" \t\r\n") == std::string::npos)
            throw Error("empty right-hand side expression");
    return DiffSystem(parse_polynomial(spec.rhs[0], spec.vars), parse_polynomial(spec.rhs[1], spec.vars));
}

/// Two lines "dx/dt = <expr>" and "dy/dt = <expr>"; the variable names
/// come from the left sides. Blank lines and '#' comments are skipped. Any
/// time symbol is accepted after the slash (dt, dtau, ...).
inline SystemSpec system_spec_from_text(std::string_view text)
{
    SystemSpec spec;
    int found = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        if (found == 2)
            throw Error("more than two equations in system text");
        auto eq = line.find('=');
        auto slash = line.find('/');
        if (eq == std::string::npos || slash == std::string::npos || slash > eq || line[first] != 'd')
            throw Error("expected 'd<var>/dt = <expr>', got: " + line);
        std::string var = line.substr(first + 1, slash - first - 1);
        while (!var.empty() && std::isspace(static_cast<unsigned char>(var.back())))
            var.pop_back();
        spec.vars[static_cast<std::size_t>(found)] = var;
        spec.rhs[static_cast<std::size_t>(found)] = line.substr(eq + 1);
        ++found;
    }
    if (found != 2)
        throw Error("system text must contain exactly two equations");
    validate_variables(spec.vars);
    return spec;
}

/// Default partner pair for conjugation: (x,y) <-> (u,v); anything else maps to (u,v).
inline Variables partner_variables(const Variables& vars)
{
    if (vars == Variables{"u", "v"})
        return {"x", "y"};
    return {"u", "v"};
}

} // namespace stereo

#endif // STEREO_SYSTEM_HPP
