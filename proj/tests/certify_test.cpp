#include "mxl/certify.hpp"
#include "mxl/critical.hpp"
#include "mxl/errors.hpp"
#include "mxl/nondegen.hpp"
#include "mxl/numeric.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace mxl;

TEST(TrigCertificate, PositiveAndVanishing) {
    TrigPoly f = TrigPoly::constant(2);
    f.add(1, GaussRational(Rational(1, 2)));
    f.add(-1, GaussRational(Rational(1, 2)));  // 2 + cos t
    GridCertificate ok = certify_nonvanishing(f, 64, 1024);
    EXPECT_TRUE(ok.certified);
    EXPECT_NEAR(ok.min_value, 1.0, 1e-3);

    TrigPoly c;
    c.add(1, GaussRational(Rational(1, 2)));
    c.add(-1, GaussRational(Rational(1, 2)));  // cos t
    GridCertificate bad = certify_nonvanishing(c, 64, 1024);
    EXPECT_FALSE(bad.certified);
    EXPECT_LT(bad.min_value, 1e-2);
}

TEST(TorusCertificate, SeparatesZeroFreeFromVanishing) {
    TorusPoly f;
    f.add(0, 0, 3);
    f.add(1, 1, 1);
    f.add(-1, -1, 1);  // 3 + 2 cos(x + y)
    EXPECT_TRUE(certify_nonvanishing(f, 32, 512).certified);
    TorusPoly g;
    g.add(1, 0, 1);
    g.add(0, 1, 1);  // e^{ix} + e^{iy} vanishes at y = x + pi
    GridCertificate c = certify_nonvanishing(g, 32, 512);
    EXPECT_FALSE(c.certified);
}

TEST(TorusPoly, ImaginaryPartOfConjugateProduct) {
    TorusPoly a, b;
    a.add(1, 0, GaussRational(1, 1));
    b.add(0, 2, GaussRational(2, -1));
    TorusPoly m = imag_conj_product(a, b);
    for (double x : {0.1, 1.3}) {
        for (double y : {0.7, 2.9}) {
            Complex direct = std::conj(a(x, y)) * b(x, y);
            EXPECT_NEAR(m(x, y).real(), direct.imag(), 1e-12);
            EXPECT_NEAR(m(x, y).imag(), 0, 1e-12);
        }
    }
}

TEST(LevenbergMarquardt, SolvesSmallSystem) {
    auto r = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd out(3);
        out << x[0] * x[0] - 2, x[1] - x[0], std::sin(x[2]);
        return out;
    };
    Eigen::VectorXd x0(3);
    x0 << 1, 0, 0.4;
    LeastSquaresResult res = levenberg_marquardt(r, x0);
    EXPECT_NEAR(res.x[0], std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(res.x[1], std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(res.x[2], 0, 1e-9);
    EXPECT_LT(res.norm, 1e-12);
}

TEST(Resultant, CuspAgainstRootProduct) {
    LoopPoly a;
    a.add(2, 0, 0, 1);
    a.add(0, 0, 3, -1);  // u^2 - e^{3it}
    // Res(a, a') = lc^1 * prod a'(roots) = (2 r1)(2 r2) = -4 e^{3it}
    EXPECT_EQ(resultant(a, a.derivative_z()), TrigPoly::monomial(3, -4));
}

TEST(Resultant, MatchesNumericRootProduct) {
    LoopPoly a;
    a.add(3, 0, 1, 2);
    a.add(1, 0, -2, GaussRational(1, 1));
    a.add(0, 0, 0, 3);
    LoopPoly b = a.derivative_z();
    TrigPoly res = resultant(a, b);
    for (double t : {0.0, 0.9, 2.2}) {
        std::vector<Complex> ca = a.coefficients_at(t), cb = b.coefficients_at(t);
        Complex prod = std::pow(ca.back(), double(b.degree()));
        for (Complex r : polynomial_roots(ca)) prod *= horner(cb, r);
        EXPECT_LT(std::abs(res(t) - prod), 1e-9 * (1 + std::abs(prod)));
    }
}

TEST(CriticalScan, TwistedPairHasConstantRate) {
    LoopPoly g;
    g.add(2, 0, 0, 1);
    g.add(0, 0, 2, -1);
    CriticalScan scan = scan_critical_points(g, 0, 256);
    ASSERT_EQ(scan.branches.size(), 1u);
    for (const auto& s : scan.branches[0]) {
        EXPECT_LT(std::abs(s.point), 1e-12);
        EXPECT_NEAR(s.rate, 2.0, 1e-12);
    }
    EXPECT_LT(scan.fd_error, 1e-6);
}

TEST(CriticalScan, MultiplicityShiftsCriticalPoints) {
    // h = u (u - 2): critical point of u * g at u = 1 is a double root of m g + u g'
    LoopPoly g;
    g.add(1, 0, 0, 1);
    g.add(0, 0, 1, -2);  // u - 2 e^{it}
    CriticalScan scan = scan_critical_points(g, 1, 64);
    ASSERT_EQ(scan.branches.size(), 1u);
    for (const auto& s : scan.branches[0]) {
        EXPECT_LT(std::abs(s.point - std::polar(1.0, s.t)), 1e-12);
        // value -e^{2it}: rate 2
        EXPECT_NEAR(s.rate, 2.0, 1e-9);
    }
}

TEST(CriticalScan, RejectsMixedLoops) {
    LoopPoly g;
    g.add(1, 1, 0, 1);
    EXPECT_THROW(scan_critical_points(g, 0, 8), NonSemiholomorphic);
}
