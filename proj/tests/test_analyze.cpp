#include "stereo/analyze.hpp"
#include "stereo/corpus.hpp"
#include "corpus_data.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stereo;
using testing_support::kUV;
using testing_support::S;

namespace {

using Pt = std::array<Rational, 2>;
using K = EquilibriumClass::Kind;
using St = EquilibriumClass::Stability;
using N = EquilibriumClass::NodeType;

Matrix2 M(long a, long b, long c, long d)
{
    return {{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}};
}

const DiffSystem kSaddle = S("x", "-y");
const DiffSystem kFocus = S("x - y", "x + y");
const DiffSystem kNode = S("x - 1", "y - 1");
const DiffSystem kDarboux = S("-y - x*(x^2 + y^2 - 1)", "x - y*(x^2 + y^2 - 1)");

} // namespace

TEST(Equilibria, Examples)
{
    EXPECT_TRUE(is_equilibrium(kSaddle, {0, 0}));
    EXPECT_TRUE(is_equilibrium(kNode, {1, 1}));
    EXPECT_FALSE(is_equilibrium(kSaddle, {1, 1}));
}

TEST(Equilibria, JacobianExamples)
{
    EXPECT_EQ(jacobian_at(kSaddle, {0, 0}), M(1, 0, 0, -1));
    EXPECT_EQ(jacobian_at(conjugate(kDarboux).conjugate, {0, 0}), M(16, 0, 0, 16));
    EXPECT_EQ(jacobian_at(S("-u - v", "u - v", kUV), {0, 0}), M(-1, -1, 1, -1));
}

TEST(Classify, Examples)
{
    EXPECT_EQ(classify_linear(M(1, 0, 0, 1)).name(), "unstable dicritical node");
    EXPECT_EQ(classify_linear(M(1, 0, 0, -1)).kind, K::saddle);
    EXPECT_EQ(classify_linear(M(-1, -1, 1, -1)), (EquilibriumClass{K::focus, St::stable, N::none}));
    EXPECT_EQ(classify_linear(M(0, 1, -1, 0)).name(), "center-linear");
}

TEST(Classify, RemainingBranches)
{
    EXPECT_EQ(classify_linear(M(-2, 0, 0, -2)).name(), "stable dicritical node");
    EXPECT_EQ(classify_linear(M(1, 0, 0, 2)).name(), "unstable simple node");
    EXPECT_EQ(classify_linear(M(-1, 1, 0, -1)).name(), "stable degenerate node");
    EXPECT_EQ(classify_linear(M(1, 1, 1, 1)).name(), "degenerate");
    EXPECT_EQ(classify_linear(M(0, 0, 0, 0)).name(), "degenerate");
    EXPECT_EQ(classify_linear(M(1, -2, 2, 1)).name(), "unstable focus");
}

TEST(Classify, InvariantUnderPositiveScaling)
{
    std::mt19937_64 rng(51);
    std::uniform_int_distribution<int> e(-3, 3);
    for (int i = 0; i < 300; ++i) {
        Matrix2 j = M(e(rng), e(rng), e(rng), e(rng));
        Rational c = testing_support::random_rational(rng);
        if (c <= 0)
            continue;
        Matrix2 cj = j;
        for (auto& row : cj)
            for (auto& v : row)
                v *= c;
        EXPECT_EQ(classify_linear(cj), classify_linear(j));
    }
}

TEST(Infinity, Examples)
{
    auto radial = infinite_point_status(S("x", "y"));
    EXPECT_FALSE(radial.regular);
    EXPECT_EQ(radial.type->name(), "stable dicritical node");

    auto darboux = infinite_point_status(kDarboux);
    EXPECT_FALSE(darboux.regular);
    EXPECT_EQ(darboux.type->name(), "unstable dicritical node");

    auto reg = infinite_point_status(S("x^2 - y^2", "2*x*y"));
    EXPECT_TRUE(reg.regular);
    EXPECT_FALSE(reg.type.has_value());
    EXPECT_EQ(conjugate(S("x^2 - y^2", "2*x*y")).conjugate, S("-4", "0", kUV));
}

TEST(Infinity, DegenerateOriginOfConjugate)
{
    // conjugate of the saddle is cubic: zero linear part at its origin
    auto st = infinite_point_status(kSaddle);
    EXPECT_FALSE(st.regular);
    EXPECT_EQ(st.type->kind, K::degenerate);
}

TEST(Symmetry, Examples)
{
    EXPECT_TRUE(check_symmetry(kSaddle, SymmetryKind::axis_first));
    EXPECT_TRUE(check_symmetry(kFocus, SymmetryKind::origin));
    EXPECT_FALSE(check_symmetry(kFocus, SymmetryKind::axis_first));
    EXPECT_EQ(symmetry_identity(kFocus, SymmetryKind::axis_first), testing_support::P("2*x^2 + 2*y^2"));
}

TEST(Symmetry, ExampleLists)
{
    auto both = [](const DiffSystem& s, SymmetryKind k) {
        return check_symmetry(s, k) && check_symmetry(conjugate(s).conjugate, k);
    };
    EXPECT_TRUE(both(kFocus, SymmetryKind::origin));
    EXPECT_TRUE(both(S("x*(x^2 + y^2 - 1) - y*(x^2 + y^2 + 1)", "x*(x^2 + y^2 + 1) + y*(x^2 + y^2 - 1)"),
                     SymmetryKind::origin));
    EXPECT_TRUE(both(kDarboux, SymmetryKind::origin));
    for (auto k : {SymmetryKind::axis_first, SymmetryKind::axis_second}) {
        EXPECT_TRUE(both(kSaddle, k));
        EXPECT_TRUE(both(S("x", "2*y"), k));
    }
    EXPECT_TRUE(both(kNode, SymmetryKind::diagonal));
    EXPECT_TRUE(both(S("y - 1", "-x + 1"), SymmetryKind::diagonal));
    EXPECT_FALSE(check_symmetry(kNode, SymmetryKind::origin));
}

TEST(Symmetry, TransfersAcrossEveryCorpusPair)
{
    for (const auto& c : load_corpus(stereoconj::kEmbeddedCorpus)) {
        DiffSystem sys = case_input(c);
        DiffSystem conj = conjugate(sys, c.target).conjugate;
        for (auto k : kAllSymmetries)
            EXPECT_EQ(check_symmetry(sys, k), check_symmetry(conj, k)) << c.id << " " << to_string(k);
    }
}

TEST(Symmetry, TransfersOnRandomSystems)
{
    std::mt19937_64 rng(52);
    for (int i = 0; i < 40; ++i) {
        DiffSystem sys = testing_support::random_coprime_system(rng, 2);
        DiffSystem conj = conjugate(sys).conjugate;
        for (auto k : kAllSymmetries)
            EXPECT_EQ(check_symmetry(sys, k), check_symmetry(conj, k));
    }
}

TEST(Symmetry, NamesRoundTrip)
{
    for (auto k : kAllSymmetries)
        EXPECT_EQ(symmetry_from_string(to_string(k)), k);
    EXPECT_FALSE(symmetry_from_string("spiral").has_value());
}

TEST(Equilibria, TransferToConjugate)
{
    EXPECT_EQ(transition(PlanePoint<Rational>{1, 1}), (PlanePoint<Rational>{2, 2}));
    EXPECT_TRUE(is_equilibrium(conjugate(kNode).conjugate, {2, 2}));

    // every rational equilibrium on a small grid, over the whole corpus
    int found = 0;
    for (const auto& c : load_corpus(stereoconj::kEmbeddedCorpus)) {
        DiffSystem sys = case_input(c);
        DiffSystem conj = conjugate(sys, c.target).conjugate;
        for (int a = -6; a <= 6; ++a)
            for (int b = -6; b <= 6; ++b) {
                Pt p{make_rational(a, 2), make_rational(b, 2)};
                if ((a == 0 && b == 0) || !is_equilibrium(sys, p))
                    continue;
                auto img = transition(PlanePoint<Rational>{p[0], p[1]});
                EXPECT_TRUE(is_equilibrium(conj, {img.a, img.b})) << c.id;
                ++found;
            }
    }
    EXPECT_GE(found, 5);
}
