#include "mxl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mxl {

Complex horner(std::span<const Complex> coeffs, Complex z) {
    Complex acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::pair<Complex, Complex> horner_with_derivative(std::span<const Complex> coeffs, Complex z) {
    Complex p = 0, dp = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
    return {p, dp};
}

Complex polish_root(std::span<const Complex> coeffs, Complex z, int steps) {
    for (int k = 0; k < steps; ++k) {
        auto [p, dp] = horner_with_derivative(coeffs, z);
        if (dp == Complex(0)) break;
        Complex step = p / dp;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(step) < 1e-17 * (1 + std::abs(z))) break;
    }
    return z;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
    std::size_t hi = coeffs.size();
    while (hi > 0 && coeffs[hi - 1] == Complex(0)) --hi;
    if (hi == 0) throw std::domain_error("zero polynomial has no finite root set");
    std::size_t lo = 0;
    while (lo < hi && coeffs[lo] == Complex(0)) ++lo;
    std::vector<Complex> roots(lo, Complex(0));
    std::vector<Complex> c(coeffs.begin() + lo, coeffs.begin() + hi);
    const int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return roots;
    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    // Fujiwara bound for the starting circle.
    double radius = 0;
    for (int k = 0; k < n; ++k)
        radius = std::max(radius, std::pow(std::abs(c[k] / c[n]), 1.0 / (n - k)));
    radius = std::max(radius, 1e-12);
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) z[k] = std::polar(radius, kTwoPi * k / n + 0.4);

    for (int iter = 0; iter < 800; ++iter) {
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            auto [p, dp] = horner_with_derivative(c, z[i]);
            if (p == Complex(0)) continue;
            Complex ratio = p / dp;
            Complex sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            Complex w = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / (1 + std::abs(z[i])));
        }
        if (worst < 1e-15) break;
    }
    for (auto& r : z) roots.push_back(polish_root(c, r, 2));
    return roots;
}

}  // namespace mxl
