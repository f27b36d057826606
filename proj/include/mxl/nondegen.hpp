#pragma once

#include "mxl/mixed_poly.hpp"
#include "mxl/newton.hpp"
#include "mxl/status.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mxl {

enum class Method { ExactShortcut, NumericSearch, Implied };

const char* to_string(Method m);

/// Point of C^2 with the normalized residual that was checked there.
struct Witness {
    Complex u;
    Complex v;
    double residual = 0;
};

struct Verdict {
    Status status = Status::Inconclusive;
    Method method = Method::NumericSearch;
    std::optional<Witness> witness;
    double tolerance = 1e-8;
    bool rigorous = false;  ///< false marks a heuristic (sampled) conclusion
    int grid = 0;
    double min_value = 0;   ///< smallest value of the certified quantity
    double margin = 0;      ///< min_value minus the Lipschitz slack, when certified
    std::string note;
};

enum class FaceKind { Edge, Vertex, UAxis, VAxis };

const char* to_string(FaceKind k);

/// Edge: 0-based face index. Vertex: lattice point. UAxis: f_{P_1} on {u = 0}. VAxis: f_{P_N} on {v = 0}.
struct FaceRef {
    FaceKind kind = FaceKind::Edge;
    std::size_t index = 0;
    LatticePoint point;
};

struct FaceVerdict {
    FaceRef face;
    Verdict verdict;
};

struct CheckOptions {
    int grid = 256;         ///< starting nodes per dimension for certificates
    double tol = 1e-8;      ///< residual tolerance
    int samples = 1024;     ///< t-samples for critical-value scans
    int search_grid = 48;   ///< nodes per dimension for three-dimensional searches
    int threads = 1;
    bool shortcuts = true;  ///< false forces the numeric search on every edge
    unsigned seed = 20240611;
};

struct NondegReport {
    std::vector<FaceVerdict> oka_weak;     ///< every edge and vertex, critical zeros in (C*)^2
    std::vector<FaceVerdict> oka_strong;   ///< every edge and vertex, critical points in (C*)^2
    std::vector<FaceVerdict> axis_weak;    ///< the two axis conditions for f_{P_1}, f_{P_N}
    std::vector<FaceVerdict> axis_strong;
    std::vector<FaceVerdict> nice_vertices;
    std::vector<FaceVerdict> true_faces;   ///< Verified: zero set meets (C*)^2

    std::optional<Status> oka_nd;
    std::optional<Status> oka_strong_nd;
    std::optional<Status> inner_nd;
    std::optional<Status> strong_inner_nd;
    std::optional<Status> nice;
    std::optional<Status> true_polynomial;
    std::optional<Status> weakly_isolated;
    std::optional<Status> isolated;
    bool convenient = false;
    std::vector<std::string> notes;
};

/// Oka (strong) non-degeneracy of every compact face and vertex.
std::vector<FaceVerdict> check_oka(const MixedPoly& p, bool strong, const CheckOptions& opts = {});

/// Inner (strongly inner when `strong`) non-degeneracy; fills the Oka and axis parts it needs.
NondegReport check_inner(const MixedPoly& p, bool strong, const CheckOptions& opts = {});

/// Empty zero sets of the non-extreme vertex functions in (C*)^2.
std::vector<FaceVerdict> check_nice(const MixedPoly& p, const CheckOptions& opts = {});

/// Per face: Verified when f_{P_i} vanishes somewhere in (C*)^2, Refuted when certified zero-free.
std::vector<FaceVerdict> check_true(const MixedPoly& p, const CheckOptions& opts = {});

/// Everything above, reconciled along the implication lattice.
NondegReport analyze_nondegeneracy(const MixedPoly& p, const CheckOptions& opts = {});

/// Combines verdicts: any Refuted wins, then any Inconclusive, else Verified. Empty gives Verified.
Status combine(const std::vector<FaceVerdict>& vs);

struct ConvenientizeResult {
    MixedPoly poly;
    bool not_needed = false;
    std::string note;
};

/// p + M1 + M2 with M1 in v, conj(v) and M2 in u, conj(u). Throws ExponentTooLow.
ConvenientizeResult convenientize(const MixedPoly& p, const MixedPoly& m1, const MixedPoly& m2);

/// Sylvester resultant in z of two semiholomorphic loop polynomials, exact.
TrigPoly resultant(const LoopPoly& a, const LoopPoly& b);

}  // namespace mxl
