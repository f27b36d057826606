#pragma once

#include "mxl/braids.hpp"
#include "mxl/linker.hpp"
#include "mxl/mixed_poly.hpp"
#include "mxl/nondegen.hpp"

#include <string>
#include <vector>

namespace mxl {

/// One level of the tower: a geometric braid and the semiholomorphic loop whose roots trace it.
struct TowerInput {
    GeometricBraid braid;
    LoopPoly loop;  ///< leading u-coefficient must be a nonzero constant
};

/// Tracks the roots of `loop` to fill in the braid.
TowerInput tower_input(const LoopPoly& loop, int samples = 1024);

/// r^{r_power} T(t).
struct RCoefficient {
    long r_power = 0;
    TrigPoly t;
};

struct TowerSpec {
    std::vector<TowerInput> levels;
    std::vector<int> s;      ///< strand counts
    std::vector<int> m;      ///< O-multiplicities, m_1 = 0
    std::vector<long> r;     ///< braid exponents are 2 r_i, r_N = 1
    std::vector<long> k;     ///< even, strictly decreasing
    std::vector<RCoefficient> a;  ///< coefficient of u^{m_i} in f_i
    std::vector<FibrationCertificate> certificates;  ///< accepted fibration certificate per level
};

struct TowerResult {
    MixedPoly f;
    TowerSpec spec;
    NondegReport report;  ///< strong inner check of f
};

struct TowerOptions {
    int samples = 1024;
    long max_r = 1L << 16;
    long max_k = 1L << 20;
    CheckOptions nondeg;
};

/// Throws NotPFibered, SearchExhausted or IntegralityFailure.
TowerResult build_tower(const std::vector<TowerInput>& inputs, const TowerOptions& opts = {});

/// B_i^{2 r_i} nested, the closure the tower should realize.
BraidWord expected_word(const TowerSpec& spec, int samples = 1024);

struct RealizationReport {
    Status status = Status::Inconclusive;
    NondegReport nondeg;
    LinkDescription link;
    BraidWord expected;
    std::string note;
};

/// Throws Mismatch when f fails to reproduce the requested closure.
RealizationReport validate_realization(const MixedPoly& f, const TowerSpec& spec, const TowerOptions& opts = {});

}  // namespace mxl
