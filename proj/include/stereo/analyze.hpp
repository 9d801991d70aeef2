#ifndef STEREO_ANALYZE_HPP
#define STEREO_ANALYZE_HPP

#include "stereo/conjugate.hpp"
#include "stereo/poly.hpp"
#include "stereo/system.hpp"

#include <array>
#include <optional>
#include <string>

namespace stereo {

using Matrix2 = std::array<std::array<Rational, 2>, 2>;

struct EquilibriumClass {
    enum class Kind { saddle, node, focus, center_linear, degenerate };
    enum class Stability { none, stable, unstable };
    enum class NodeType { none, simple, dicritical, degenerate };

    Kind kind = Kind::degenerate;
    Stability stability = Stability::none;
    NodeType node = NodeType::none;

    friend bool operator==(const EquilibriumClass&, const EquilibriumClass&) = default;

    /// e.g. "stable dicritical node", "saddle", "center-linear".
    std::string name() const
    {
        std::string st = stability == Stability::stable ? "stable " : stability == Stability::unstable ? "unstable " : "";
        switch (kind) {
        case Kind::saddle:
            return "saddle";
        case Kind::focus:
            return st + "focus";
        case Kind::center_linear:
            return "center-linear";
        case Kind::degenerate:
            return "degenerate";
        case Kind::node:
            break;
        }
        const char* nt = node == NodeType::dicritical ? "dicritical " : node == NodeType::degenerate ? "degenerate " : "simple ";
        return st + nt + "node";
    }
};

enum class SymmetryKind { origin, axis_first, axis_second, diagonal, antidiagonal };

inline constexpr std::array<SymmetryKind, 5> kAllSymmetries{SymmetryKind::origin, SymmetryKind::axis_first,
                                                          SymmetryKind::axis_second, SymmetryKind::diagonal,
                                                          SymmetryKind::antidiagonal};

inline std::string to_string(SymmetryKind k)
{
    switch (k) {
    case SymmetryKind::origin: return "origin";
    case SymmetryKind::axis_first: return "axis-first";
    case SymmetryKind::axis_second: return "axis-second";
    case SymmetryKind::diagonal: return "diagonal";
    case SymmetryKind::antidiagonal: return "antidiagonal";
    }
    return "?";
}

inline std::optional<SymmetryKind> symmetry_from_string(const std::string& s)
{
    for (auto k : kAllSymmetries)
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

inline bool is_equilibrium(const DiffSystem& sys, const std::array<Rational, 2>& p)
{
    return sys.p().evaluate(p[0], p[1]) == 0 && sys.q().evaluate(p[0], p[1]) == 0;
}

inline Matrix2 jacobian_at(const DiffSystem& sys, const std::array<Rational, 2>& p)
{
    Matrix2 j;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = sys.rhs(r).derivative(c).evaluate(p[0], p[1]);
    return j;
}

/// Linear type from trace and determinant. Scalar matrices are checked
/// before the discriminant split, since they sit on the parabola
/// trace^2 = 4 det.
inline EquilibriumClass classify_linear(const Matrix2& j)
{
    using K = EquilibriumClass::Kind;
    using S = EquilibriumClass::Stability;
    using N = EquilibriumClass::NodeType;

    Rational tr = j[0][0] + j[1][1];
    Rational det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    EquilibriumClass out;
    if (det < 0) {
        out.kind = K::saddle;
        return out;
    }
    if (det == 0) {
        out.kind = K::degenerate;
        return out;
    }
    S st = tr < 0 ? S::stable : S::unstable;
    if (j[0][1] == 0 && j[1][0] == 0 && j[0][0] == j[1][1])
        return {K::node, st, N::dicritical};
    if (tr == 0)
        return {K::center_linear, S::none, N::none};
    Rational disc = tr * tr - 4 * det;
    if (disc > 0)
        return {K::node, st, N::simple};
    if (disc == 0)
        return {K::node, st, N::degenerate};
    return {K::focus, st, N::none};
}

struct InfinityStatus {
    bool regular = true;
    std::optional<EquilibriumClass> type; // set when the point at infinity is an equilibrium
    Matrix2 conjugate_linear_part;
};

/// The point at infinity is an equilibrium exactly when the conjugate
/// system vanishes at its origin, and then has the same type.
inline InfinityStatus infinite_point_status(const DiffSystem& sys)
{
    ConjugationResult c = conjugate(sys);
    std::array<Rational, 2> origin{Rational(0), Rational(0)};
    InfinityStatus out;
    out.conjugate_linear_part = jacobian_at(c.conjugate, origin);
    if (!is_equilibrium(c.conjugate, origin))
        return out;
    out.regular = false;
    out.type = classify_linear(out.conjugate_linear_part);
    return out;
}

/// The polynomial identity whose vanishing is the given symmetry of the
/// direction field.
inline BiPoly symmetry_identity(const DiffSystem& sys, SymmetryKind kind)
{
    const BiPoly& x = sys.p();
    const BiPoly& y = sys.q();
    auto neg = [](const BiPoly& p, int sa, int sb) { return scale_arguments(p, Rational(sa), Rational(sb)); };
    switch (kind) {
    case SymmetryKind::origin:
        return x * neg(y, -1, -1) - neg(x, -1, -1) * y;
    case SymmetryKind::axis_first:
        return x * neg(y, 1, -1) + neg(x, 1, -1) * y;
    case SymmetryKind::axis_second:
        return x * neg(y, -1, 1) + neg(x, -1, 1) * y;
    case SymmetryKind::diagonal:
        return x * swap_arguments(x) - y * swap_arguments(y);
    case SymmetryKind::antidiagonal:
        return neg(x, -1, -1) * swap_arguments(x) - neg(y, -1, -1) * swap_arguments(y);
    }
    return BiPoly(sys.variables());
}

inline bool check_symmetry(const DiffSystem& sys, SymmetryKind kind)
{
    return symmetry_identity(sys, kind).is_zero();
}

} // namespace stereo

#endif // STEREO_ANALYZE_HPP
