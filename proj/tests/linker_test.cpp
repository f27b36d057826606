#include "mxl/linker.hpp"

#include "mxl/errors.hpp"
#include "mxl/expr.hpp"
#include "mxl/newton.hpp"
#include "mxl/numeric.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace mxl;

namespace {

GeometricBraid sampled(const std::vector<std::function<Complex(double)>>& curves, int n = 512) {
    std::vector<std::vector<Complex>> out;
    for (const auto& c : curves) {
        std::vector<Complex> st;
        for (int k = 0; k <= n; ++k) st.push_back(c(kTwoPi * k / n));
        out.push_back(st);
    }
    return make_braid(out);
}

LoopPoly loop(std::initializer_list<std::tuple<int, int, int, GaussRational>> terms) {
    LoopPoly g;
    for (const auto& [a, b, f, c] : terms) g.add(a, b, f, c);
    return g;
}

const GaussRational kOne(1), kMinusOne(-1);

}  // namespace

TEST(NestBraids, SingleBraidUnchanged) {
    GeometricBraid b = track_roots(loop({{2, 0, 0, kOne}, {0, 0, 3, kMinusOne}}), 512);
    NestResult r = nest_braids({b});
    EXPECT_EQ(r.word, extract_word(b));
    EXPECT_EQ(r.scales.size(), 1u);
}

TEST(NestBraids, RotatingInnerStrandBetweenFixedPair) {
    // Hand diagram: the inner strand circles the axis inside the gap of the outer pair and never
    // crosses either outer strand in the real projection.
    GeometricBraid b1 = sampled({[](double t) { return std::polar(1.0, t); }});
    GeometricBraid b2 = sampled({[](double) { return Complex(1); }, [](double) { return Complex(-1); }});
    NestResult r = nest_braids({b1, b2});
    EXPECT_EQ(r.word, BraidWord::parse("", 3));
    EXPECT_EQ(r.word.components(), 3);
}

TEST(NestBraids, OuterBraidAroundInnerBraid) {
    GeometricBraid b1 = track_roots(loop({{2, 0, 0, kOne}, {0, 0, 3, kMinusOne}}), 512);
    GeometricBraid b2 = sampled({[](double t) { return 2.0 * std::polar(1.0, t); }});
    NestResult r = nest_braids({b1, b2});
    EXPECT_EQ(r.word.strands, 3);
    EXPECT_EQ(r.word.components(), 2);
    NestResult half = nest_braids({b1, b2}, {4, 2});
    EXPECT_EQ(half.word.components(), 2);
}

TEST(NestBraids, OuterBraidMustAvoidOrigin) {
    GeometricBraid b1 = sampled({[](double) { return Complex(1); }});
    GeometricBraid b2 = sampled({[](double t) { return std::polar(1.0, t) - 1.0; }});
    EXPECT_THROW(nest_braids({b1, b2}), NotAffine);
}

TEST(AddAxis, ComponentCounts) {
    EXPECT_EQ(add_axis(BraidWord::parse("1 1 1")).components, 2);
    EXPECT_EQ(add_axis(BraidWord::parse("", 1)).components, 2);
    EXPECT_EQ(add_axis(BraidWord::parse("1")).components, 2);
    EXPECT_EQ(add_axis(BraidWord::parse("1")).kind, LinkKind::BraidPlusAxis);
}

TEST(TraceFaceLink, WorkedExampleFirstFaceIsTwoStrandBraid) {
    MixedPoly p = parse_poly("u^8 + v^3*u^2 + conj(v)^5*u - 2*(v^7+conj(v)^7)");
    TraceOptions o;
    o.chart = Chart::U;
    SolidTorusLink L = trace_face_link(p, 0, o);
    ASSERT_TRUE(L.braid.has_value());
    EXPECT_EQ(L.braid->strand_count(), 2);
    // the constant term -4 cos(7t) vanishes, so a strand crosses the core
    EXPECT_FALSE(L.avoids_core);
}

TEST(TraceFaceLink, ComplementaryChartOfCusp) {
    // e^{2 i phi} - y^3: one closed curve wrapping three times
    SolidTorusLink L = trace_face_link(parse_poly("u^2 - v^3"), 0, TraceOptions{.chart = Chart::V});
    EXPECT_EQ(L.chart, Chart::V);
    ASSERT_EQ(L.components.size(), 1u);
    EXPECT_EQ(L.components[0].wrapping, 3);
}

TEST(TraceZeroSet, TwoDimensionalZeroSetIsSingular) {
    EXPECT_THROW(trace_zero_set(loop({{1, 1, 0, kOne}, {0, 0, 0, kMinusOne}}), Chart::U), SingularZeroSet);
}

TEST(TraceZeroSet, EmptyLink) {
    SolidTorusLink L = trace_zero_set(loop({{1, 1, 0, kOne}, {0, 0, 0, kOne}}), Chart::U);
    EXPECT_TRUE(L.empty());
}

TEST(TraceZeroSet, MixedCurvesStayOnZeroSet) {
    const GaussRational quarter(Rational(1, 4)), minus_half(Rational(-1, 2));
    std::vector<LoopPoly> loops = {
        loop({{1, 0, 0, kOne}, {0, 1, 0, quarter}, {0, 0, 1, minus_half}}),
        loop({{2, 0, 0, kOne}, {0, 1, 0, GaussRational(Rational(1, 8))}, {0, 0, 1, kMinusOne}}),
    };
    std::vector<int> expected_wrapping = {1, 2};
    for (std::size_t i = 0; i < loops.size(); ++i) {
        SolidTorusLink L = trace_zero_set(loops[i], Chart::U, TraceOptions{.samples = 512});
        ASSERT_EQ(L.components.size(), 1u);
        EXPECT_FALSE(L.braid.has_value());
        EXPECT_EQ(std::abs(L.components[0].wrapping), expected_wrapping[i]);
        EXPECT_TRUE(L.avoids_core);
        for (std::size_t k = 0; k < L.components[0].z.size(); ++k)
            EXPECT_LT(std::abs(loops[i](L.components[0].z[k], L.components[0].angle[k])), 1e-9);
    }
}

TEST(AssembleLink, AllBraidsMatchesNesting) {
    GeometricBraid b1 = track_roots(loop({{2, 0, 0, kOne}, {0, 0, 3, kMinusOne}}), 512);
    GeometricBraid b2 = sampled({[](double t) { return 2.0 * std::polar(1.0, t); }});
    SolidTorusLink l1 = trace_zero_set(loop({{2, 0, 0, kOne}, {0, 0, 3, kMinusOne}}), Chart::U, {.samples = 512});
    SolidTorusLink l2 = trace_zero_set(loop({{1, 0, 0, kOne}, {0, 0, 1, GaussRational(-2)}}), Chart::U, {.samples = 512});
    LinkDescription d = assemble_link({l1, l2});
    EXPECT_EQ(d.kind, LinkKind::ClosedBraid);
    EXPECT_EQ(*d.word, nest_braids({b1, b2}).word);
    EXPECT_EQ(d.components, 2);
    EXPECT_EQ(count_components(d), 2);
}

TEST(AssembleLink, CoreInLastPieceGivesAxis) {
    SolidTorusLink l1 = trace_zero_set(loop({{2, 0, 0, kOne}, {0, 0, 3, kMinusOne}}), Chart::U, {.samples = 512});
    SolidTorusLink core = trace_zero_set(loop({{1, 0, 0, kOne}}), Chart::V, {.samples = 512});
    ASSERT_TRUE(core.contains_core);
    LinkDescription d = assemble_link({l1, core});
    EXPECT_EQ(d.kind, LinkKind::BraidPlusAxis);
    EXPECT_EQ(*d.word, BraidWord::parse("1 1 1"));
    EXPECT_EQ(d.components, 2);
}

TEST(AssembleLink, SinglePieceAndCoreViolation) {
    const GaussRational quarter(Rational(1, 4)), minus_half(Rational(-1, 2));
    SolidTorusLink mixed =
        trace_zero_set(loop({{1, 0, 0, kOne}, {0, 1, 0, quarter}, {0, 0, 1, minus_half}}), Chart::U, {.samples = 256});
    LinkDescription d = assemble_link({mixed});
    EXPECT_EQ(d.kind, LinkKind::TorusPair);
    EXPECT_EQ(d.components, 1);

    SolidTorusLink through_core =
        trace_zero_set(loop({{1, 0, 0, kOne}, {0, 0, 0, minus_half}, {0, 0, 1, minus_half}}), Chart::U, {.samples = 256});
    EXPECT_FALSE(through_core.avoids_core);
    EXPECT_THROW(assemble_link({mixed, through_core}), CoreViolation);
}

TEST(LinkOfSingularity, TorusKnotsAndLinks) {
    LinkDescription trefoil = link_of_singularity(parse_poly("u^2 - v^3"));
    EXPECT_EQ(*trefoil.word, BraidWord::parse("1 1 1"));
    EXPECT_EQ(trefoil.components, 1);
    EXPECT_EQ(count_components(trefoil), 1);
    LinkDescription hopf = link_of_singularity(parse_poly("u^2 - v^2"));
    EXPECT_EQ(*hopf.word, BraidWord::parse("1 1"));
    EXPECT_EQ(hopf.components, 2);
}

TEST(LinkOfSingularity, WorkedExampleComponentsAreAdditive) {
    LinkDescription d = link_of_singularity(parse_poly("u^8 + v^3*u^2 + conj(v)^5*u - 2*(v^7+conj(v)^7)"));
    ASSERT_EQ(d.piece_components.size(), 2u);
    EXPECT_EQ(d.components, d.piece_components[0] + d.piece_components[1]);
    EXPECT_EQ(d.word->strands, 8);
    EXPECT_EQ(count_components(d), d.components);
}

TEST(LinkOfSingularity, NonConvenientAddsAxis) {
    LinkDescription d = link_of_singularity(parse_poly("u^2*v - v^4"));
    EXPECT_EQ(d.kind, LinkKind::BraidPlusAxis);
    EXPECT_TRUE(d.axis);
    EXPECT_EQ(d.components, 2);
}

TEST(LinkOfSingularity, MixedPrincipalPartUsesLevelSets) {
    LinkDescription d = link_of_singularity(parse_poly("u^2*conj(u) + v^3"));
    EXPECT_EQ(d.kind, LinkKind::TorusPair);
    EXPECT_EQ(d.components, 1);
}

TEST(LinkOfSingularity, PreconditionGate) {
    EXPECT_THROW(link_of_singularity(parse_poly("u^4 - u^2*v^3")), PreconditionFailed);
}

TEST(LinkOfSingularity, TermsAboveBoundaryDoNotMatter) {
    LinkDescription a = link_of_singularity(parse_poly("u^2 - v^3"));
    LinkDescription b = link_of_singularity(parse_poly("u^2 - v^3 + u*v^2 + 3*v^4"));
    EXPECT_TRUE(a.same_as(b));
}
