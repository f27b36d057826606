#pragma once

#include "mxl/mixed_poly.hpp"
#include "mxl/trig.hpp"

#include <vector>

namespace mxl {

/// Primitive positive weight (p1, p2); l_P(a, b) = p1 a + p2 b.
struct Weight {
    long p1 = 1;
    long p2 = 1;

    long operator()(const LatticePoint& w) const { return p1 * w.a + p2 * w.b; }
    bool operator==(const Weight&) const = default;
};

/// Compact 1-face of the Newton boundary. `left` has the smaller |u|-degree.
struct Face {
    Weight weight;
    long d = 0;         ///< minimum of l_P over the support
    LatticePoint left;  ///< (m, top |v|-degree)
    LatticePoint right; ///< (s, n)
    Rational k;         ///< p1 / p2
    long n = 0;         ///< smallest |v|-exponent on the face
    long s = 0;         ///< largest |u|-exponent on the face
    long m = 0;         ///< smallest |u|-exponent on the face
    std::vector<LatticePoint> points;  ///< support points on the face
};

struct Vertex {
    LatticePoint point;
    bool extreme = false;  ///< lies on exactly one compact 1-face
};

struct NewtonData {
    std::vector<LatticePoint> support;
    std::vector<Vertex> vertices;  ///< from the |v|-axis side to the |u|-axis side
    std::vector<Face> faces;       ///< steepest first: k_1 > k_2 > ...

    std::size_t face_count() const { return faces.size(); }
    /// 0-based index of a vertex, or -1.
    int vertex_index(const LatticePoint& p) const;
};

/// Throws NoCompactFace when the boundary is a single vertex.
NewtonData newton_polygon(const MixedPoly& p);

/// d(Q; p): minimum of l_Q over the support of p.
long weighted_degree(const MixedPoly& p, const Weight& q);

/// Terms of p minimizing l_Q.
MixedPoly relative_face_function(const MixedPoly& p, const Weight& q);

/// Terms on the compact 1-face `index` (0-based). Throws FaceNotFound.
MixedPoly face_function(const MixedPoly& p, std::size_t index);
MixedPoly face_function(const MixedPoly& p, const NewtonData& nd, std::size_t index);
/// Terms sitting at a boundary vertex. Throws FaceNotFound.
MixedPoly vertex_function(const MixedPoly& p, const LatticePoint& vertex);

/// All terms on the Newton boundary.
MixedPoly principal_part(const MixedPoly& p);

/// True when every support point of q lies in the Newton polyhedron of nd and strictly above every face line.
bool lies_above_boundary(const MixedPoly& q, const NewtonData& nd);

/// g_i: f_{P_i}(r^{k_i} w, r e^{it}) = r^{d_i / p_{i,2}} g_i(w, conj(w), e^{it}).
LoopPoly face_to_loop(const MixedPoly& p, std::size_t index);
LoopPoly face_to_loop(const MixedPoly& p, const NewtonData& nd, std::size_t index);

/// Complementary chart: f_{P_i}(R e^{i phi}, R^{1/k_i} y) = R^{d_i / p_{i,1}} g(y, conj(y), e^{i phi}).
LoopPoly face_to_vchart_loop(const MixedPoly& p, const NewtonData& nd, std::size_t index);
/// The chart loop of the last face.
LoopPoly hat_g_N(const MixedPoly& p);

/// f_i(u, r, t) with f(r^{k_i} u, r e^{it}) = r^{d_i / p_{i,2}} f_i(u, r, t); f_i(u, 0, t) = g_i(u, e^{it}).
Complex deformation_eval(const MixedPoly& p, std::size_t index, Complex u, double r, double t);

/// One monomial of a deformation in the u-chart of a face: c w^a conj(w)^b e^{i freq t} r^power.
struct DeformationTerm {
    int a = 0;
    int b = 0;
    int freq = 0;
    Rational power;  ///< (l_P(w) - d) / p2 >= 0
    GaussRational c;
};

std::vector<DeformationTerm> deformation_terms(const MixedPoly& p, const NewtonData& nd, std::size_t index);

}  // namespace mxl
