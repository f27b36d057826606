#pragma once

#include "mxl/trig.hpp"

#include <vector>

namespace mxl {

/// One critical point of h = z^m g(z, e^{it}) at a fixed angle.
struct CriticalSample {
    double t = 0;
    Complex point;
    Complex value;    ///< h(point)
    Complex dvalue;   ///< partial t-derivative of h at point
    double rate = 0;  ///< d/dt arg h along the critical point, Im(g_t / g)
};

/// Critical points of h = z^m g away from z = 0, tracked over t_k = 2 pi k / samples, k = 0..samples.
struct CriticalScan {
    int m = 0;
    int samples = 0;
    LoopPoly equation;  ///< m g + z g_z when m > 0, g_z otherwise
    std::vector<std::vector<CriticalSample>> branches;
    double fd_error = 0;  ///< largest gap between unwrapped finite-difference and analytic rates
};

/// The polynomial whose roots are the non-zero critical points of z^m g.
LoopPoly critical_equation(const LoopPoly& g, int m);

/// g must be semiholomorphic with a non-vanishing leading coefficient.
/// Throws NonSemiholomorphic or LeadingCoefficientVanishes.
CriticalScan scan_critical_points(const LoopPoly& g, int m, int samples);

/// Critical point of z^m g near `guess` at angle t, by Newton on the critical equation.
CriticalSample critical_point_near(const LoopPoly& g, const LoopPoly& equation, int m, double t, Complex guess);

/// Greedy nearest-neighbour assignment: result[i] is the index in `next` matched to prev[i].
std::vector<int> match_points(const std::vector<Complex>& prev, const std::vector<Complex>& next);

}  // namespace mxl
