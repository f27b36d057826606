#include "mxl/newton.hpp"

#include "mxl/errors.hpp"
#include "mxl/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mxl {

int NewtonData::vertex_index(const LatticePoint& p) const {
    for (std::size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k].point == p) return static_cast<int>(k);
    return -1;
}

namespace {

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a.a - o.a) * (b.b - o.b) - (a.b - o.b) * (b.a - o.a);
}

LatticePoint point_of(const Exponents& e) { return {e.u_degree(), e.v_degree()}; }

}  // namespace

NewtonData newton_polygon(const MixedPoly& p) {
    if (p.is_zero()) throw NoCompactFace();
    NewtonData nd;
    std::set<LatticePoint> support = p.support();
    nd.support.assign(support.begin(), support.end());

    // Lowest b for each a, then the lower-left convex chain from the leftmost
    // column down to the first point of minimal height.
    std::map<long, long> lowest;
    for (const auto& pt : support) {
        auto it = lowest.find(pt.a);
        if (it == lowest.end() || pt.b < it->second) lowest[pt.a] = pt.b;
    }
    long min_b = std::numeric_limits<long>::max();
    for (const auto& [a, b] : lowest) min_b = std::min(min_b, b);
    std::vector<LatticePoint> pts;
    for (const auto& [a, b] : lowest) {
        pts.push_back({a, b});
        if (b == min_b) break;
    }
    std::vector<LatticePoint> hull;
    for (const auto& pt : pts) {
        // keep strict left turns only (counterclockwise), which drops collinear points
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
        hull.push_back(pt);
    }
    // Only the strictly decreasing part belongs to the boundary.
    std::vector<LatticePoint> chain{hull.front()};
    for (std::size_t k = 1; k < hull.size(); ++k)
        if (hull[k].b < chain.back().b) chain.push_back(hull[k]);
    if (chain.size() < 2) throw NoCompactFace();

    for (std::size_t k = 0; k < chain.size(); ++k)
        nd.vertices.push_back({chain[k], k == 0 || k + 1 == chain.size()});

    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const LatticePoint& l = chain[k];
        const LatticePoint& r = chain[k + 1];
        long p1 = l.b - r.b, p2 = r.a - l.a;
        long g = std::gcd(p1, p2);
        Face f;
        f.weight = {p1 / g, p2 / g};
        f.d = f.weight(l);
        f.left = l;
        f.right = r;
        f.k = Rational(f.weight.p1, f.weight.p2);
        f.k.canonicalize();
        f.s = r.a;
        f.n = r.b;
        f.m = l.a;
        for (const auto& pt : support)
            if (f.weight(pt) == f.d) f.points.push_back(pt);
        nd.faces.push_back(std::move(f));
    }
    return nd;
}

long weighted_degree(const MixedPoly& p, const Weight& q) {
    long best = std::numeric_limits<long>::max();
    for (const auto& pt : p.support()) best = std::min(best, q(pt));
    return best;
}

MixedPoly relative_face_function(const MixedPoly& p, const Weight& q) {
    if (p.is_zero()) return {};
    long d = weighted_degree(p, q);
    return p.filter([&](const Exponents& e) { return q(point_of(e)) == d; });
}

MixedPoly face_function(const MixedPoly& p, const NewtonData& nd, std::size_t index) {
    if (index >= nd.faces.size()) throw FaceNotFound("no face with index " + std::to_string(index + 1));
    const Face& f = nd.faces[index];
    return p.filter([&](const Exponents& e) { return f.weight(point_of(e)) == f.d; });
}

MixedPoly face_function(const MixedPoly& p, std::size_t index) {
    return face_function(p, newton_polygon(p), index);
}

MixedPoly vertex_function(const MixedPoly& p, const LatticePoint& vertex) {
    NewtonData nd = newton_polygon(p);
    if (nd.vertex_index(vertex) < 0)
        throw FaceNotFound("(" + std::to_string(vertex.a) + "," + std::to_string(vertex.b) + ") is not a vertex");
    return p.filter([&](const Exponents& e) { return point_of(e) == vertex; });
}

MixedPoly principal_part(const MixedPoly& p) {
    NewtonData nd = newton_polygon(p);
    return p.filter([&](const Exponents& e) {
        LatticePoint pt = point_of(e);
        return std::any_of(nd.faces.begin(), nd.faces.end(),
                           [&](const Face& f) { return f.weight(pt) == f.d; });
    });
}

bool lies_above_boundary(const MixedPoly& q, const NewtonData& nd) {
    for (const auto& pt : q.support()) {
        if (pt.a < nd.vertices.front().point.a || pt.b < nd.vertices.back().point.b) return false;
        for (const auto& f : nd.faces)
            if (f.weight(pt) <= f.d) return false;
    }
    return true;
}

LoopPoly face_to_loop(const MixedPoly& p, const NewtonData& nd, std::size_t index) {
    MixedPoly fp = face_function(p, nd, index);
    LoopPoly g;
    for (const auto& [e, c] : fp.terms()) g.add(e.u, e.ubar, e.v - e.vbar, c);
    return g;
}

LoopPoly face_to_loop(const MixedPoly& p, std::size_t index) {
    return face_to_loop(p, newton_polygon(p), index);
}

LoopPoly face_to_vchart_loop(const MixedPoly& p, const NewtonData& nd, std::size_t index) {
    MixedPoly fp = face_function(p, nd, index);
    LoopPoly g;
    for (const auto& [e, c] : fp.terms()) g.add(e.v, e.vbar, e.u - e.ubar, c);
    return g;
}

LoopPoly hat_g_N(const MixedPoly& p) {
    NewtonData nd = newton_polygon(p);
    return face_to_vchart_loop(p, nd, nd.faces.size() - 1);
}

std::vector<DeformationTerm> deformation_terms(const MixedPoly& p, const NewtonData& nd, std::size_t index) {
    if (index >= nd.faces.size()) throw FaceNotFound("no face with index " + std::to_string(index + 1));
    const Face& f = nd.faces[index];
    std::vector<DeformationTerm> out;
    for (const auto& [e, c] : p.terms()) {
        Rational power(f.weight(point_of(e)) - f.d, f.weight.p2);
        power.canonicalize();
        out.push_back({e.u, e.ubar, e.v - e.vbar, power, c});
    }
    return out;
}

Complex deformation_eval(const MixedPoly& p, std::size_t index, Complex u, double r, double t) {
    NewtonData nd = newton_polygon(p);
    Complex acc = 0;
    for (const auto& term : deformation_terms(p, nd, index)) {
        double weight;
        if (sgn(term.power) == 0) weight = 1;
        else if (r == 0) continue;
        else weight = std::exp(term.power.get_d() * std::log(r));
        Complex mono = ipow(u, term.a) * ipow(std::conj(u), term.b);
        acc += term.c.to_complex() * mono * std::polar(weight, term.freq * t);
    }
    return acc;
}

}  // namespace mxl
