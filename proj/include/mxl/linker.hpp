#pragma once

#include "mxl/braids.hpp"
#include "mxl/mixed_poly.hpp"
#include "mxl/nondegen.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mxl {

/// U: points (u, t) of C x S^1 with v = e^{it}. V: points (phi, v) of S^1 x C with u = e^{i phi}.
enum class Chart { U, V };

const char* to_string(Chart c);

/// Closed sampled curve; `z` is the complex coordinate of the chart, `angle` the circle coordinate in [0, 2 pi).
struct TracedCurve {
    std::vector<Complex> z;
    std::vector<double> angle;
    int wrapping = 0;  ///< degree over the circle factor
};

struct SolidTorusLink {
    Chart chart = Chart::U;
    std::vector<TracedCurve> components;
    bool avoids_core = true;
    bool contains_core = false;  ///< one component is the core circle z = 0
    std::optional<GeometricBraid> braid;  ///< set when the zero set was tracked as a braid
    int seed_grid = 0;
    std::string warning;

    bool empty() const { return components.empty(); }
};

struct NestResult {
    GeometricBraid braid;
    BraidWord word;
    double epsilon = 0;
    std::vector<double> k;
    std::vector<double> scales;  ///< epsilon^{k_i}
};

/// B(B_1, ..., B_N): B_i shrunk by epsilon^{k_i}. k defaults to N, N-1, ..., 1.
/// Throws NotAffine(i) (1-based) and DisjointnessFailure.
NestResult nest_braids(const std::vector<GeometricBraid>& bs, std::vector<double> k = {});

/// Union of the B_i shrunk by epsilon^{k_i} for a fixed epsilon, without separation checks.
GeometricBraid nest_with_scale(const std::vector<GeometricBraid>& bs, const std::vector<double>& k, double epsilon);

enum class LinkKind { ClosedBraid, BraidPlusAxis, TorusPair };

const char* to_string(LinkKind k);

struct LinkDescription {
    LinkKind kind = LinkKind::ClosedBraid;
    std::optional<BraidWord> word;
    bool axis = false;
    bool core_u = false;
    bool core_v = false;
    int components = 0;
    std::vector<double> nesting;
    std::vector<int> piece_components;
    std::vector<std::vector<int>> wrapping;  ///< per piece, sorted

    /// Equality of descriptions; nesting scales are ignored.
    bool same_as(const LinkDescription& o) const;
};

LinkDescription add_axis(const BraidWord& w);
LinkDescription add_axis(const GeometricBraid& b);

struct TraceOptions {
    int samples = 1024;
    int seed_grid = 64;
    double tol = 1e-10;
    std::optional<Chart> chart;  ///< default: U for inner faces, V for the last face
};

/// Zero set of a loop polynomial read in the given chart. Semiholomorphic loops are tracked as braids,
/// mixed loops by level-set continuation. Throws SingularZeroSet.
SolidTorusLink trace_zero_set(const LoopPoly& g, Chart chart, const TraceOptions& opts = {});

/// L_i for face `index` (0-based).
SolidTorusLink trace_face_link(const MixedPoly& p, std::size_t index, const TraceOptions& opts = {});

/// L([L_1, ..., L_{N-1}], L_N). Throws CoreViolation(i) (1-based).
LinkDescription assemble_link(const std::vector<SolidTorusLink>& ls);

struct LinkOptions {
    int samples = 1024;
    bool check_preconditions = true;
    CheckOptions nondeg;
    TraceOptions trace;
};

/// Throws PreconditionFailed when inner non-degeneracy (or niceness, off the semiholomorphic route) is not Verified.
LinkDescription link_of_singularity(const MixedPoly& p, const LinkOptions& opts = {});

int count_components(const LinkDescription& d);

}  // namespace mxl
