#include "stereo/io.hpp"
#include "stereo/parse.hpp"
#include "stereo/system.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace stereo;
using testing_support::kXY;
using testing_support::P;

namespace {

ParseError::Kind error_kind(const std::string& text)
{
    try {
        parse_polynomial(text, kXY);
    } catch (const ParseError& e) {
        return e.kind;
    }
    ADD_FAILURE() << "no error for " << text;
    return ParseError::Kind::syntax;
}

BiPoly by_terms(std::initializer_list<std::tuple<unsigned, unsigned, Rational>> terms)
{
    BiPoly p(kXY);
    for (const auto& [i, j, c] : terms)
        p.add_term({i, j}, c);
    return p;
}

} // namespace

TEST(ParsePolynomial, Examples)
{
    EXPECT_EQ(P("x^2 - y^2"), by_terms({{2, 0, 1}, {0, 2, -1}}));
    EXPECT_EQ(P("-y - x*(x^2 + y^2 - 1)"), by_terms({{3, 0, -1}, {1, 2, -1}, {1, 0, 1}, {0, 1, -1}}));
    EXPECT_EQ(error_kind("x^-1"), ParseError::Kind::negative_exponent);
}

TEST(ParsePolynomial, ImplicitMultiplication)
{
    EXPECT_EQ(P("3x^2y"), by_terms({{2, 1, 3}}));
    EXPECT_EQ(P("2(x+y)"), by_terms({{1, 0, 2}, {0, 1, 2}}));
    EXPECT_EQ(P("(x+1)(x-1)"), by_terms({{2, 0, 1}, {0, 0, -1}}));
    EXPECT_EQ(P("x y"), by_terms({{1, 1, 1}}));
}

TEST(ParsePolynomial, PrecedenceAndRationals)
{
    EXPECT_EQ(P("-x^2"), by_terms({{2, 0, -1}}));
    EXPECT_EQ(P("2^3*x"), by_terms({{1, 0, 8}}));
    EXPECT_EQ(P("1/4*x - y/2"), by_terms({{1, 0, Rational(1, 4)}, {0, 1, Rational(-1, 2)}}));
    EXPECT_EQ(P("(x + y)^0"), by_terms({{0, 0, 1}}));
    EXPECT_EQ(P("x − y"), P("x - y")); // typographic minus
}

TEST(ParsePolynomial, ErrorsCarryKindAndPosition)
{
    EXPECT_EQ(error_kind("x + z"), ParseError::Kind::unknown_variable);
    EXPECT_EQ(error_kind("x^1.5"), ParseError::Kind::non_integer_exponent);
    EXPECT_EQ(error_kind("x +"), ParseError::Kind::syntax);
    EXPECT_EQ(error_kind("(x"), ParseError::Kind::syntax);
    EXPECT_EQ(error_kind("x ^ y"), ParseError::Kind::non_integer_exponent);
    try {
        parse_polynomial("x + $", kXY);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 4u);
    }
}

TEST(ParsePolynomial, FuzzedInputsNeverEscapeAsOtherErrors)
{
    std::mt19937_64 rng(21);
    const std::string alphabet = "xy0123456789+-*^/() .z";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(1, 14);
    for (int i = 0; i < 2000; ++i) {
        std::string s;
        for (std::size_t n = len(rng); n; --n)
            s.push_back(alphabet[pick(rng)]);
        try {
            parse_polynomial(s, kXY);
        } catch (const ParseError&) {
        } catch (const std::exception& e) {
            ADD_FAILURE() << "'" << s << "' raised " << e.what();
        }
    }
}

TEST(ParseSystem, Examples)
{
    DiffSystem s = parse_system({kXY, {"x", "-y"}});
    EXPECT_EQ(s.degree(), 1u);
    EXPECT_EQ(s.q(), P("-y"));

    DiffSystem c = parse_system({kXY, {"1", "0"}});
    EXPECT_EQ(c.degree(), 0u);
    EXPECT_TRUE(c.q().is_zero());

    EXPECT_THROW(parse_system({kXY, {"0", "0"}}), BothRhsZero);
}

TEST(ParseSystem, CoprimalityIsRecordedNotEnforced)
{
    DiffSystem s = parse_system({kXY, {"x*(x + y)", "y*(x + y)"}});
    EXPECT_FALSE(s.coprime());
    EXPECT_TRUE(parse_system({kXY, {"x", "y"}}).coprime());
}

TEST(ParseSystem, RejectsBadVariablePairs)
{
    EXPECT_THROW(parse_system({{"x", "x"}, {"x", "1"}}), Error);
    EXPECT_THROW(parse_system({{"1a", "y"}, {"y", "1"}}), Error);
    EXPECT_THROW(parse_system({kXY, {"", "1"}}), Error);
}

TEST(ParseSystem, TextForm)
{
    SystemSpec spec = system_spec_from_text("# saddle\ndu/dt = u\n\ndv/dtau = -v\n");
    EXPECT_EQ(spec.vars, (Variables{"u", "v"}));
    EXPECT_EQ(parse_system(spec), parse_system({{"u", "v"}, {"u", "-v"}}));
    EXPECT_THROW(system_spec_from_text("dx/dt = x\n"), Error);
    EXPECT_THROW(system_spec_from_text("x = 1\ny = 2\n"), Error);
}

TEST(ParseSystem, JsonForm)
{
    SystemSpec spec = system_spec_from_string(R"({"vars": ["x","y"], "rhs": ["y", "-x"]})");
    EXPECT_EQ(parse_system(spec), parse_system({kXY, {"y", "-x"}}));
    EXPECT_EQ(system_spec_from_string(R"({"rhs": ["1", "0"]})").vars, kXY);
    EXPECT_THROW(system_spec_from_string(R"({"rhs": ["1"]})"), Error);
    EXPECT_THROW(system_spec_from_string("{ not json"), Error);
}

TEST(ParseSystem, SerializedSystemRoundTrips)
{
    std::mt19937_64 rng(22);
    for (int i = 0; i < 20; ++i) {
        DiffSystem s = testing_support::random_coprime_system(rng, 3);
        Json j = to_json(s);
        EXPECT_EQ(parse_system(system_spec_from_json(j)), s);
    }
}
