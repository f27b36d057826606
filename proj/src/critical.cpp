#include "mxl/critical.hpp"

#include "mxl/errors.hpp"
#include "mxl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace mxl {

LoopPoly critical_equation(const LoopPoly& g, int m) {
    LoopPoly dz = g.derivative_z();
    LoopPoly shifted;
    for (const auto& [key, c] : dz.coeffs()) shifted.add(key.first + 1, key.second, c);
    if (m == 0) return dz;
    LoopPoly out = shifted;
    for (const auto& [key, c] : g.coeffs()) out.add(key.first, key.second, c * GaussRational(m));
    return out;
}

std::vector<int> match_points(const std::vector<Complex>& prev, const std::vector<Complex>& next) {
    const std::size_t n = prev.size();
    std::vector<std::tuple<double, int, int>> pairs;
    pairs.reserve(n * next.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < next.size(); ++j)
            pairs.emplace_back(std::abs(prev[i] - next[j]), int(i), int(j));
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> out(n, -1);
    std::vector<char> used(next.size(), 0);
    std::size_t assigned = 0;
    for (const auto& [d, i, j] : pairs) {
        if (out[i] >= 0 || used[j]) continue;
        out[i] = j;
        used[j] = 1;
        if (++assigned == n) break;
    }
    return out;
}

namespace {

CriticalSample evaluate_sample(const CompiledLoop& cg, int m, double t, Complex z) {
    CriticalSample s;
    s.t = t;
    s.point = z;
    LoopJet j = cg.jet(z, t);
    Complex zm = ipow(z, m);
    s.value = zm * j.g;
    s.dvalue = zm * j.gt;
    s.rate = j.g == Complex(0) ? std::numeric_limits<double>::quiet_NaN() : std::imag(j.gt / j.g);
    return s;
}

std::vector<Complex> critical_roots(const LoopPoly& eq, double t, double lead_tol) {
    std::vector<Complex> c = eq.coefficients_at(t);
    double scale = 0;
    for (auto x : c) scale = std::max(scale, std::abs(x));
    if (c.empty() || std::abs(c.back()) <= lead_tol * std::max(scale, 1e-300)) throw LeadingCoefficientVanishes(t);
    return polynomial_roots(c);
}

}  // namespace

CriticalSample critical_point_near(const LoopPoly& g, const LoopPoly& equation, int m, double t, Complex guess) {
    std::vector<Complex> c = equation.coefficients_at(t);
    Complex z = polish_root(c, guess, 30);
    return evaluate_sample(CompiledLoop(g), m, t, z);
}

CriticalScan scan_critical_points(const LoopPoly& g, int m, int samples) {
    if (!g.is_semiholomorphic()) throw NonSemiholomorphic();
    CriticalScan scan;
    scan.m = m;
    scan.samples = samples;
    scan.equation = critical_equation(g, m);
    if (scan.equation.is_zero() || scan.equation.degree() == 0) return scan;
    CompiledLoop cg(g);
    const double h = kTwoPi / samples;

    auto roots_at = [&](double t) { return critical_roots(scan.equation, t, 1e-12); };

    std::vector<Complex> current = roots_at(0);
    scan.branches.resize(current.size());
    for (std::size_t b = 0; b < current.size(); ++b) scan.branches[b].push_back(evaluate_sample(cg, m, 0, current[b]));
    for (int k = 1; k <= samples; ++k) {
        const double t = k * h;
        std::vector<Complex> next = roots_at(t);
        std::vector<int> idx = match_points(current, next);
        for (std::size_t b = 0; b < current.size(); ++b) {
            Complex z = idx[b] >= 0 ? next[idx[b]] : current[b];
            current[b] = z;
            scan.branches[b].push_back(evaluate_sample(cg, m, t, z));
        }
    }

    double fd = 0;
    for (const auto& br : scan.branches)
        for (std::size_t k = 1; k < br.size(); ++k) {
            const auto& a = br[k - 1];
            const auto& b = br[k];
            if (a.value == Complex(0) || b.value == Complex(0)) continue;
            double darg = std::arg(b.value / a.value) / h;
            fd = std::max(fd, std::abs(darg - 0.5 * (a.rate + b.rate)));
        }
    scan.fd_error = fd;
    return scan;
}

}  // namespace mxl
