#pragma once

#include "mxl/mixed_poly.hpp"

#include <random>

namespace mxl::gen {

/// Small integer or Gaussian-integer coefficient, never zero.
inline GaussRational random_coefficient(std::mt19937& rng, bool complex = true) {
    std::uniform_int_distribution<int> d(-4, 4);
    for (;;) {
        GaussRational c(Rational(d(rng)), complex ? Rational(d(rng) / 2) : Rational(0));
        if (!c.is_zero()) return c;
    }
}

/// Random mixed polynomial with at most max_terms terms of total degree <= max_degree.
inline MixedPoly random_mixed(std::mt19937& rng, int max_degree, int max_terms, bool mixed = true) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(1, max_degree);
    MixedPoly p;
    while (p.is_zero()) {
        int n = nterms(rng);
        for (int k = 0; k < n; ++k) {
            int total = deg(rng);
            std::uniform_int_distribution<int> part(0, 3);
            Exponents e;
            for (int j = 0; j < total; ++j) {
                switch (part(rng)) {
                    case 0: ++e.u; break;
                    case 1: ++e.v; break;
                    case 2: mixed ? ++e.ubar : ++e.u; break;
                    default: mixed ? ++e.vbar : ++e.v; break;
                }
            }
            p.add_term(e, random_coefficient(rng));
        }
    }
    return p;
}

}  // namespace mxl::gen
