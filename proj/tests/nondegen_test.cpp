#include "mxl/errors.hpp"
#include "mxl/expr.hpp"
#include "mxl/nondegen.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mxl;

namespace {

const char* kExample = "u^8 + v^3*u^2 + conj(v)^5*u - 2*(v^7 + conj(v)^7)";

const FaceVerdict* find(const std::vector<FaceVerdict>& vs, FaceKind kind, LatticePoint pt = {}) {
    for (const auto& fv : vs)
        if (fv.face.kind == kind && (kind != FaceKind::Vertex || fv.face.point == pt)) return &fv;
    return nullptr;
}

CheckOptions fast() {
    CheckOptions o;
    o.samples = 256;
    o.search_grid = 24;
    return o;
}

}  // namespace

TEST(Nondegen, ExampleInnerButNotOka) {
    MixedPoly f = parse_poly(kExample);
    NondegReport rep = analyze_nondegeneracy(f);
    ASSERT_TRUE(rep.inner_nd);
    EXPECT_EQ(*rep.inner_nd, Status::Verified);
    EXPECT_EQ(*rep.oka_nd, Status::Refuted);
    EXPECT_EQ(*rep.weakly_isolated, Status::Verified);
    const FaceVerdict* v07 = find(rep.oka_weak, FaceKind::Vertex, {0, 7});
    ASSERT_NE(v07, nullptr);
    ASSERT_EQ(v07->verdict.status, Status::Refuted);
    ASSERT_TRUE(v07->verdict.witness);
    Complex v = v07->verdict.witness->v;
    EXPECT_LT(std::abs(std::pow(v, 7) + std::pow(std::conj(v), 7)), 1e-8);
    // the inner vertex (2,3) and both edges are fine
    EXPECT_EQ(find(rep.oka_weak, FaceKind::Vertex, {2, 3})->verdict.status, Status::Verified);
    EXPECT_EQ(rep.oka_weak[0].verdict.status, Status::Verified);
    EXPECT_EQ(rep.oka_weak[1].verdict.status, Status::Verified);
    EXPECT_TRUE(rep.oka_weak[0].verdict.rigorous);
    EXPECT_FALSE(rep.notes.empty());
    EXPECT_EQ(*rep.nice, Status::Verified);
    EXPECT_EQ(*rep.true_polynomial, Status::Verified);
}

TEST(Nondegen, WitnessAtPiOverFourteen) {
    auto oka = check_oka(parse_poly(kExample), false);
    const FaceVerdict* v07 = find(oka, FaceKind::Vertex, {0, 7});
    ASSERT_TRUE(v07 && v07->verdict.witness);
    double t = std::arg(v07->verdict.witness->v);
    // zeros of cos(7t) are pi/14 + k pi/7
    double k = (t - M_PI / 14) / (M_PI / 7);
    EXPECT_NEAR(k, std::round(k), 1e-9);
    EXPECT_LT(v07->verdict.witness->residual, 1e-8);
}

TEST(Nondegen, InconvenientInnerDegenerate) {
    NondegReport rep = check_inner(parse_poly("u^4 - u^2*v^3"), false);
    EXPECT_EQ(*rep.inner_nd, Status::Refuted);
    const FaceVerdict* axis = find(rep.axis_weak, FaceKind::UAxis);
    ASSERT_TRUE(axis && axis->verdict.witness);
    EXPECT_EQ(axis->verdict.witness->u, Complex(0));
    // Oka ND holds: the degeneracy sits on the axis
    EXPECT_EQ(*check_inner(parse_poly("u^4 - u^2*v^3"), false).oka_nd, Status::Verified);
}

TEST(Nondegen, CuspStronglyInner) {
    NondegReport rep = check_inner(parse_poly("u^2 - v^3"), true);
    EXPECT_EQ(*rep.strong_inner_nd, Status::Verified);
    EXPECT_EQ(*rep.inner_nd, Status::Verified);
    EXPECT_EQ(*rep.isolated, Status::Verified);
    auto strong = check_oka(parse_poly("u^2 - v^3"), true);
    EXPECT_EQ(strong[0].verdict.status, Status::Verified);
}

TEST(Nondegen, MonomialVertexStrong) {
    // u^2 v^3 as a vertex profile: M1 = 2, M2 = 3 never both vanish
    auto oka = check_oka(parse_poly(kExample), true);
    EXPECT_EQ(find(oka, FaceKind::Vertex, {2, 3})->verdict.status, Status::Verified);
}

TEST(Nondegen, NotNiceVertex) {
    auto nice = check_nice(parse_poly("u^4 + u^2*(v + conj(v)) + v^4"));
    ASSERT_EQ(nice.size(), 1u);
    EXPECT_EQ(nice[0].face.point, (LatticePoint{2, 1}));
    ASSERT_EQ(nice[0].verdict.status, Status::Refuted);
    EXPECT_NEAR(std::abs(std::cos(std::arg(nice[0].verdict.witness->v))), 0, 1e-9);
}

TEST(Nondegen, NiceVacuousForSingleFace) {
    EXPECT_TRUE(check_nice(parse_poly("u^2 - v^3")).empty());
    EXPECT_EQ(*analyze_nondegeneracy(parse_poly("u^2 - v^3"), fast()).nice, Status::Verified);
}

TEST(Nondegen, TrueFaces) {
    auto t = check_true(parse_poly("u^2 - v^3"));
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t[0].verdict.status, Status::Verified);
    auto e = check_true(parse_poly(kExample));
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e[0].verdict.status, Status::Verified);
    EXPECT_EQ(e[1].verdict.status, Status::Verified);
    auto f = check_true(parse_poly("u*conj(u) + v*conj(v)"), fast());
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0].verdict.status, Status::Refuted);
    EXPECT_TRUE(f[0].verdict.rigorous);
}

TEST(Nondegen, NoCompactFace) {
    EXPECT_THROW(check_oka(parse_poly("u*v"), false), NoCompactFace);
    EXPECT_THROW(check_inner(parse_poly("u^3"), false), NoCompactFace);
}

TEST(Nondegen, MixedFaceNumericSearch) {
    // |u|^2 - |v|^2 has critical zeros all along |u| = |v|
    auto oka = check_oka(parse_poly("u*conj(u) - v*conj(v)"), false, fast());
    ASSERT_EQ(oka[0].face.kind, FaceKind::Edge);
    EXPECT_EQ(oka[0].verdict.status, Status::Refuted);
    EXPECT_EQ(oka[0].verdict.method, Method::NumericSearch);
    ASSERT_TRUE(oka[0].verdict.witness);
    EXPECT_LT(oka[0].verdict.witness->residual, 1e-8);
    // u conj(u) + v^2 : f = |u|^2 + v^2; critical only where u = 0 or v = 0
    auto fine = check_oka(parse_poly("u*conj(u) + v^2"), false, fast());
    EXPECT_EQ(fine[0].verdict.status, Status::Verified);
    EXPECT_FALSE(fine[0].verdict.rigorous);
}

TEST(Nondegen, RefutedWitnessesReverify) {
    std::mt19937 rng(7);
    int refuted = 0;
    for (int trial = 0; trial < 40; ++trial) {
        MixedPoly p = gen::random_mixed(rng, 4, 4);
        NondegReport rep;
        try {
            rep = check_inner(p, true, fast());
        } catch (const NoCompactFace&) {
            continue;
        }
        for (const auto* list : {&rep.oka_weak, &rep.oka_strong, &rep.axis_weak, &rep.axis_strong})
            for (const auto& fv : *list)
                if (fv.verdict.status == Status::Refuted) {
                    ++refuted;
                    ASSERT_TRUE(fv.verdict.witness);
                    EXPECT_LT(fv.verdict.witness->residual, fv.verdict.tolerance);
                }
    }
    EXPECT_GT(refuted, 0);
}

TEST(Nondegen, ShortcutAgreesWithSearch) {
    std::mt19937 rng(11);
    CheckOptions exact = fast(), numeric = fast();
    numeric.shortcuts = false;
    int compared = 0, decisive = 0;
    for (int trial = 0; compared < 20 && trial < 400; ++trial) {
        MixedPoly p = gen::random_mixed(rng, 4, 4, false);
        NewtonData nd;
        try {
            nd = newton_polygon(p);
        } catch (const NoCompactFace&) {
            continue;
        }
        ++compared;
        for (bool strong : {false, true}) {
            auto a = check_oka(p, strong, exact);
            auto b = check_oka(p, strong, numeric);
            for (std::size_t i = 0; i < nd.faces.size(); ++i) {
                Status sa = a[i].verdict.status, sb = b[i].verdict.status;
                if (sa == Status::Inconclusive || sb == Status::Inconclusive) continue;
                ++decisive;
                EXPECT_EQ(sa, sb) << format_poly(p) << " face " << i << " strong " << strong;
            }
        }
    }
    EXPECT_EQ(compared, 20);
    EXPECT_GT(decisive, 20);
}

TEST(Nondegen, ImplicationLattice) {
    std::mt19937 rng(3);
    int seen = 0;
    for (int trial = 0; seen < 25 && trial < 200; ++trial) {
        MixedPoly p = gen::random_mixed(rng, 4, 4, trial % 2 == 0);
        NondegReport rep;
        try {
            rep = analyze_nondegeneracy(p, fast());
        } catch (const NoCompactFace&) {
            continue;
        }
        ++seen;
        if (*rep.strong_inner_nd == Status::Verified) EXPECT_EQ(*rep.inner_nd, Status::Verified);
        if (*rep.oka_strong_nd == Status::Verified) EXPECT_EQ(*rep.oka_nd, Status::Verified);
        if (rep.convenient && *rep.oka_nd == Status::Verified) EXPECT_EQ(*rep.inner_nd, Status::Verified);
        if (rep.convenient && *rep.oka_strong_nd == Status::Verified)
            EXPECT_EQ(*rep.strong_inner_nd, Status::Verified);
    }
    EXPECT_EQ(seen, 25);
}

TEST(Convenientize, AddsMissingAxisTerm) {
    ConvenientizeResult r = convenientize(parse_poly("u^2*v - v^4"), MixedPoly(), parse_poly("u^9"));
    EXPECT_FALSE(r.not_needed);
    EXPECT_EQ(r.poly, parse_poly("u^2*v - v^4 + u^9"));
    EXPECT_TRUE(classify_structure(r.poly).convenient);
}

TEST(Convenientize, NotNeededWhenConvenient) {
    MixedPoly f = parse_poly(kExample);
    ConvenientizeResult r = convenientize(f, parse_poly("v^20"), parse_poly("u^20"));
    EXPECT_TRUE(r.not_needed);
    EXPECT_EQ(r.poly, f);
}

TEST(Convenientize, BoundIsStrict) {
    // single face (2,2)-(5,0): P = (2,3), d = 10, bound d / p2 = 10/3
    MixedPoly p = parse_poly("u^2*v^2 + u^5");
    EXPECT_THROW(convenientize(p, parse_poly("v^3"), MixedPoly()), ExponentTooLow);
    EXPECT_NO_THROW(convenientize(p, parse_poly("v^4"), MixedPoly()));
    // single face (3,1)-(4,0): P = (1,1), d = 4, so v^4 sits exactly on the bound
    MixedPoly q = parse_poly("u^3*v + u^4");
    EXPECT_THROW(convenientize(q, parse_poly("v^4"), MixedPoly()), ExponentTooLow);
    EXPECT_NO_THROW(convenientize(q, parse_poly("v^5"), MixedPoly()));
}
