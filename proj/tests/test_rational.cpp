#include "stereo/rational.hpp"

#include <gtest/gtest.h>

using namespace stereo;

TEST(Rational, StoredInLowestTerms)
{
    Rational q = make_rational(6, -4);
    EXPECT_EQ(q.get_num(), -3);
    EXPECT_EQ(q.get_den(), 2);
    EXPECT_EQ(to_string(Rational(0)), "0");
    EXPECT_EQ(Rational(0).get_den(), 1);
}

TEST(Rational, ParsesFractionsIntegersAndDecimals)
{
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_EQ(parse_rational("0.2"), Rational(1, 5));
    EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
    EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Rational, LeadingZerosAreDecimal)
{
    EXPECT_EQ(parse_rational("010"), Rational(10));
    EXPECT_EQ(parse_rational("079"), Rational(79));
    EXPECT_EQ(parse_rational("08/012"), Rational(2, 3));
    EXPECT_EQ(parse_rational("0.09"), Rational(9, 100));
}

TEST(Rational, PrintsAsNumeratorOverDenominator)
{
    EXPECT_EQ(to_string(Rational(-96, 5)), "-96/5");
    EXPECT_EQ(to_string(Rational(8960)), "8960");
}

TEST(Rational, IntegerPowersIncludingNegative)
{
    EXPECT_EQ(pow(Rational(4), -1), Rational(1, 4));
    EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
    EXPECT_EQ(pow(Rational(5), 0), Rational(1));
    EXPECT_THROW(pow(Rational(0), -2), std::domain_error);
}
