#include "mxl/errors.hpp"
#include "mxl/expr.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

using namespace mxl;

namespace {

const char* kExample = "u^8 + v^3*u^2 + conj(v)^5*u - 2*(v^7 + conj(v)^7)";

}  // namespace

TEST(Parse, MixedExampleSupportAndCoefficients) {
    MixedPoly p = parse_poly(kExample);
    std::set<LatticePoint> expected{{8, 0}, {2, 3}, {1, 5}, {0, 7}};
    EXPECT_EQ(p.support(), expected);
    EXPECT_EQ(p.coefficient({0, 7, 0, 0}), GaussRational(-2));
    EXPECT_EQ(p.coefficient({0, 0, 0, 7}), GaussRational(-2));
    EXPECT_EQ(p.coefficient({1, 0, 0, 5}), GaussRational(1));
    EXPECT_EQ(p.size(), 5u);
}

TEST(Parse, ZeroIsEmpty) {
    EXPECT_THROW(parse_poly("0"), EmptyPolynomial);
    EXPECT_THROW(parse_poly("u - u"), EmptyPolynomial);
}

TEST(Parse, ConjugateProduct) {
    MixedPoly p = parse_poly("u*conj(u)");
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.terms().begin()->first, (Exponents{1, 0, 1, 0}));
    EXPECT_EQ(p.terms().begin()->second, GaussRational(1));
}

TEST(Parse, TildeShorthandMatchesConj) {
    EXPECT_EQ(parse_poly("~v^2*u + ~u"), parse_poly("conj(v)^2*u + conj(u)"));
}

TEST(Parse, ComplexAndRationalLiterals) {
    MixedPoly p = parse_poly("(2+3i)*u + 3/4*v - 0.5i*v^2");
    EXPECT_EQ(p.coefficient({1, 0, 0, 0}), GaussRational(2, 3));
    EXPECT_EQ(p.coefficient({0, 1, 0, 0}), GaussRational(Rational(3, 4)));
    EXPECT_EQ(p.coefficient({0, 2, 0, 0}), GaussRational(0, Rational(-1, 2)));
    EXPECT_EQ(parse_poly("i*i*u"), parse_poly("-u"));
}

TEST(Parse, RejectionsCarryPositions) {
    struct Case {
        const char* text;
        std::size_t position;
    };
    for (auto [text, position] : {Case{"u +", 3}, Case{"u ^ 0", 4}, Case{"2u", 1}, Case{"w", 0},
                                   Case{"(u", 2}, Case{"u / v", 2}, Case{"conj u", 5}}) {
        try {
            parse_poly(text);
            ADD_FAILURE() << text;
        } catch (const SyntaxError& e) {
            EXPECT_EQ(e.position(), position) << text;
            EXPECT_FALSE(e.expected().empty());
        }
    }
}

TEST(Format, Canonical) {
    MixedPoly p;
    p.add_term({2, 0, 0, 0}, 1);
    p.add_term({0, 3, 0, 0}, -1);
    EXPECT_EQ(format_poly(p), "u^2 - v^3");
    EXPECT_EQ(format_poly(parse_poly(kExample)),
              "u^8 + u^2*v^3 + u*conj(v)^5 - 2*v^7 - 2*conj(v)^7");
    EXPECT_EQ(format_poly(MixedPoly::monomial({1, 0, 0, 0}, GaussRational(2, 3))), "(2+3i)*u");
}

TEST(Format, ExampleRoundTrip) {
    MixedPoly p = parse_poly(kExample);
    EXPECT_EQ(parse_poly(format_poly(p)), p);
}

TEST(Format, RoundTripProperty) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        MixedPoly p = gen::random_mixed(rng, 7, 6);
        if (trial % 3 == 0) p *= GaussRational(Rational(1, 3), Rational(-5, 7));
        EXPECT_EQ(parse_poly(format_poly(p)), p) << format_poly(p);
    }
}
