#pragma once

#include "mxl/gauss.hpp"

#include <span>
#include <utility>
#include <vector>

namespace mxl {

inline Complex ipow(Complex z, int n) {
    Complex r = 1;
    while (n > 0) {
        if (n & 1) r *= z;
        n >>= 1;
        if (n) z *= z;
    }
    return r;
}

/// p(z) for coefficients ordered from the constant term up.
Complex horner(std::span<const Complex> coeffs, Complex z);
/// p(z) and p'(z).
std::pair<Complex, Complex> horner_with_derivative(std::span<const Complex> coeffs, Complex z);

/// All roots of a polynomial (constant term first) by Aberth iteration with Newton polishing.
/// The top coefficient must be non-zero.
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);

/// Newton refinement of one root; returns the refined value.
Complex polish_root(std::span<const Complex> coeffs, Complex z, int steps = 3);

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.141592653589793238462643383279;

}  // namespace mxl
