#include "mxl/linker.hpp"

#include "mxl/errors.hpp"
#include "mxl/newton.hpp"
#include "mxl/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mxl {

const char* to_string(Chart c) { return c == Chart::U ? "u" : "v"; }

const char* to_string(LinkKind k) {
    switch (k) {
    case LinkKind::ClosedBraid: return "closed-braid";
    case LinkKind::BraidPlusAxis: return "braid-plus-axis";
    case LinkKind::TorusPair: return "torus-pair";
    }
    return "?";
}

bool LinkDescription::same_as(const LinkDescription& o) const {
    return kind == o.kind && word == o.word && axis == o.axis && core_u == o.core_u && core_v == o.core_v &&
           components == o.components && piece_components == o.piece_components && wrapping == o.wrapping;
}

// ---------------------------------------------------------------- nesting

namespace {

std::vector<double> radii(const GeometricBraid& b, bool largest) {
    std::vector<double> out(b.samples() + 1, largest ? 0.0 : std::numeric_limits<double>::infinity());
    for (const auto& st : b.strands)
        for (std::size_t k = 0; k < st.size(); ++k)
            out[k] = largest ? std::max(out[k], std::abs(st[k])) : std::min(out[k], std::abs(st[k]));
    return out;
}

GeometricBraid scaled_union(const std::vector<GeometricBraid>& bs, const std::vector<double>& scales) {
    std::vector<std::vector<Complex>> strands;
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (const auto& st : bs[i].strands) {
            std::vector<Complex> s2(st.size());
            for (std::size_t k = 0; k < st.size(); ++k) s2[k] = scales[i] * st[k];
            strands.push_back(std::move(s2));
        }
    return make_braid(std::move(strands));
}

}  // namespace

NestResult nest_braids(const std::vector<GeometricBraid>& bs, std::vector<double> k) {
    const std::size_t n = bs.size();
    if (n == 0) throw std::invalid_argument("nothing to nest");
    if (k.empty())
        for (std::size_t i = 0; i < n; ++i) k.push_back(static_cast<double>(n - i));
    if (k.size() != n) throw std::invalid_argument("one exponent per braid");
    for (std::size_t i = 0; i < n; ++i) {
        if (k[i] <= 0 || (i > 0 && k[i] >= k[i - 1])) throw std::invalid_argument("exponents must decrease and stay positive");
        if (i > 0 && bs[i].strand_count() > 0 && !bs[i].affine) throw NotAffine(i + 1);
    }
    int samples = -1;
    for (const auto& b : bs) {
        if (b.strand_count() == 0) continue;
        if (samples >= 0 && b.samples() != samples) throw std::invalid_argument("braids sampled differently");
        samples = b.samples();
    }

    std::vector<std::vector<double>> outer, inner;
    for (const auto& b : bs) {
        outer.push_back(radii(b, true));
        inner.push_back(radii(b, false));
    }
    auto separated = [&](double eps) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (bs[i].strand_count() == 0) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (bs[j].strand_count() == 0) continue;
                const double ratio = std::pow(eps, k[i] - k[j]);
                for (int s = 0; s <= samples; ++s)
                    if (!(ratio * outer[i][s] < 0.25 * inner[j][s])) return false;
                break;
            }
        }
        return true;
    };
    auto scales_for = [&](double eps) {
        std::vector<double> sc;
        for (double ki : k) sc.push_back(std::pow(eps, ki));
        return sc;
    };

    double eps = 0.5;
    while (!separated(eps)) {
        eps /= 2;
        if (std::pow(eps, k[0]) < 1e-150) throw DisjointnessFailure();
    }
    for (int retry = 0; retry < 8; ++retry, eps /= 2) {
        NestResult r;
        r.epsilon = eps;
        r.k = k;
        r.scales = scales_for(eps);
        r.braid = scaled_union(bs, r.scales);
        r.word = extract_word(r.braid);
        if (extract_word(scaled_union(bs, scales_for(eps / 2))) == r.word) return r;
    }
    throw DisjointnessFailure();
}

GeometricBraid nest_with_scale(const std::vector<GeometricBraid>& bs, const std::vector<double>& k, double epsilon) {
    if (k.size() != bs.size()) throw std::invalid_argument("one exponent per braid");
    std::vector<double> sc;
    for (double ki : k) sc.push_back(std::pow(epsilon, ki));
    return scaled_union(bs, sc);
}

LinkDescription add_axis(const BraidWord& w) {
    LinkDescription d;
    d.kind = LinkKind::BraidPlusAxis;
    d.word = w;
    d.axis = true;
    d.components = w.components() + 1;
    d.piece_components = {w.components()};
    return d;
}

LinkDescription add_axis(const GeometricBraid& b) { return add_axis(extract_word(b)); }

// ---------------------------------------------------------------- tracing

namespace {

double loop_scale(const LoopPoly& g) {
    double s = 0;
    for (const auto& [key, c] : g.coeffs()) s = std::max(s, c.l1_norm());
    return s;
}

/// Radius containing every zero, from the top-degree part.
double zero_radius(const LoopPoly& g, std::string& warning) {
    const int D = g.degree();
    double lower = 0;
    std::vector<std::pair<int, CompiledTrig>> top;
    for (const auto& [key, c] : g.coeffs()) {
        if (key.first + key.second == D)
            top.emplace_back(key.first - key.second, CompiledTrig(c));
        else
            lower += c.l1_norm();
    }
    if (D == 0) return 1;
    double mu = std::numeric_limits<double>::infinity();
    const int n = 96;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double theta = kTwoPi * a / n, t = kTwoPi * b / n;
            Complex v = 0;
            for (const auto& [w, c] : top) v += c(t) * std::polar(1.0, w * theta);
            mu = std::min(mu, std::abs(v));
        }
    if (mu < 1e-6 * (1 + lower)) {
        warning = "top-degree part nearly vanishes; seed box radius fixed at 4";
        return 4;
    }
    return std::min(1e3, 1.05 * std::max(1.0, lower / mu));
}

using Vec3 = Eigen::Vector3d;

struct LevelSet {
    CompiledLoop g;
    double scale;

    Eigen::Vector2d value(const Vec3& X) const {
        Complex v = g(Complex(X[0], X[1]), X[2]);
        return {v.real(), v.imag()};
    }
    /// Rows: gradients of Re g and Im g in (x, y, t).
    Eigen::Matrix<double, 2, 3> jacobian(const Vec3& X) const {
        LoopJet j = g.jet(Complex(X[0], X[1]), X[2]);
        Complex dx = j.gz + j.gzbar, dy = Complex(0, 1) * (j.gz - j.gzbar);
        Eigen::Matrix<double, 2, 3> J;
        J << dx.real(), dy.real(), j.gt.real(), dx.imag(), dy.imag(), j.gt.imag();
        return J;
    }
    bool corrected(Vec3& X, double tol) const {
        for (int it = 0; it < 12; ++it) {
            Eigen::Vector2d F = value(X);
            if (F.norm() < tol * (1 + scale)) return true;
            Eigen::MatrixXd J = jacobian(X);
            X -= J.completeOrthogonalDecomposition().solve(F);
        }
        return value(X).norm() < tol * (1 + scale);
    }
    void require_regular(const Vec3& X) const {
        auto J = jacobian(X);
        Eigen::JacobiSVD<Eigen::Matrix<double, 2, 3>> svd(J);
        const auto sv = svd.singularValues();
        if (sv[1] < 1e-7 * (1 + sv[0])) throw SingularZeroSet(Complex(X[0], X[1]), std::fmod(X[2], kTwoPi));
    }
    Vec3 tangent(const Vec3& X) const {
        auto J = jacobian(X);
        Vec3 T = Vec3(J.row(0)).cross(Vec3(J.row(1)));
        return T.normalized();
    }
};

double wrap_angle(double t) {
    double r = std::fmod(t, kTwoPi);
    return r < 0 ? r + kTwoPi : r;
}

/// Distance in C x S^1 between X and Y.
double periodic_distance(const Vec3& X, const Vec3& Y) {
    double dt = std::remainder(X[2] - Y[2], kTwoPi);
    return std::sqrt((X[0] - Y[0]) * (X[0] - Y[0]) + (X[1] - Y[1]) * (X[1] - Y[1]) + dt * dt);
}

TracedCurve trace_from(const LevelSet& ls, Vec3 start, int samples, double tol) {
    const double h = kTwoPi / samples;
    TracedCurve curve;
    ls.require_regular(start);
    Vec3 X = start, T = ls.tangent(start);
    curve.z.push_back(Complex(X[0], X[1]));
    curve.angle.push_back(wrap_angle(X[2]));
    double travelled = 0;
    const long max_steps = 64L * samples;
    double step = h;
    for (long n = 0; n < max_steps;) {
        Vec3 Y = X + step * T;
        if (!ls.corrected(Y, tol) || (Y - X).norm() > 2 * step) {
            step /= 2;
            if (step < h / 1024) throw TracingFailure(wrap_angle(X[2]));
            continue;
        }
        ls.require_regular(Y);
        Vec3 T2 = ls.tangent(Y);
        if (T2.dot(T) < 0) T2 = -T2;
        // closing test on the segment X -> Y
        Vec3 S = start;
        S[2] += kTwoPi * std::round((Y[2] - S[2]) / kTwoPi);
        Vec3 seg = Y - X;
        double lambda = std::clamp((S - X).dot(seg) / seg.squaredNorm(), 0.0, 1.0);
        double close = (X + lambda * seg - S).norm();
        travelled += seg.norm();
        if (travelled > 4 * h && close < 0.6 * h) {
            curve.wrapping = static_cast<int>(std::lround((S[2] - start[2]) / kTwoPi));
            return curve;
        }
        X = Y;
        T = T2;
        curve.z.push_back(Complex(X[0], X[1]));
        curve.angle.push_back(wrap_angle(X[2]));
        step = std::min(h, step * 2);
        ++n;
    }
    throw TracingFailure(wrap_angle(X[2]));
}

std::vector<Vec3> find_seeds(const LevelSet& ls, double R, int grid, double tol) {
    std::vector<Vec3> seeds;
    const double cell = 2 * R / (grid - 1);
    std::vector<double> mod(grid * grid);
    for (int s = 0; s < grid; ++s) {
        const double t = kTwoPi * s / grid;
        for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b)
                mod[a * grid + b] = std::abs(ls.g(Complex(-R + a * cell, -R + b * cell), t));
        for (int a = 0; a < grid; ++a)
            for (int b = 0; b < grid; ++b) {
                const double v = mod[a * grid + b];
                bool minimum = true;
                for (int da = -1; da <= 1 && minimum; ++da)
                    for (int db = -1; db <= 1; ++db) {
                        int a2 = a + da, b2 = b + db;
                        if ((da || db) && a2 >= 0 && b2 >= 0 && a2 < grid && b2 < grid && mod[a2 * grid + b2] < v) {
                            minimum = false;
                            break;
                        }
                    }
                if (!minimum) continue;
                // planar Newton at fixed t
                Complex z(-R + a * cell, -R + b * cell);
                bool ok = false;
                for (int it = 0; it < 30; ++it) {
                    LoopJet j = ls.g.jet(z, t);
                    Eigen::Matrix2d J;
                    Complex dx = j.gz + j.gzbar, dy = Complex(0, 1) * (j.gz - j.gzbar);
                    J << dx.real(), dy.real(), dx.imag(), dy.imag();
                    if (std::abs(J.determinant()) < 1e-14 * (1 + ls.scale * ls.scale)) break;
                    Eigen::Vector2d d = J.lu().solve(Eigen::Vector2d(j.g.real(), j.g.imag()));
                    z -= Complex(d[0], d[1]);
                    if (std::abs(z) > 4 * R) break;
                    if (d.norm() < 1e-14 * (1 + std::abs(z))) {
                        ok = true;
                        break;
                    }
                }
                Vec3 X(z.real(), z.imag(), t);
                if (!ok) {
                    // the slice may be tangent to the zero set; fall back to minimum-norm Newton
                    X = Vec3(-R + a * cell, -R + b * cell, t);
                    if (v > 4 * cell * (1 + ls.scale) * 10 || !ls.corrected(X, tol)) continue;
                }
                if (std::abs(ls.g(Complex(X[0], X[1]), X[2])) > tol * (1 + ls.scale)) continue;
                bool dup = false;
                for (const auto& S : seeds) dup = dup || periodic_distance(S, X) < 1e-7 * (1 + R);
                if (!dup) seeds.push_back(X);
            }
    }
    return seeds;
}

SolidTorusLink braid_link(GeometricBraid b, Chart chart) {
    SolidTorusLink L;
    L.chart = chart;
    const int n = b.samples();
    std::vector<char> seen(b.strand_count(), 0);
    for (int i = 0; i < b.strand_count(); ++i) {
        if (seen[i]) continue;
        TracedCurve c;
        for (int j = i; !seen[j]; j = b.permutation[j]) {
            seen[j] = 1;
            for (int k = 0; k < n; ++k) {
                c.z.push_back(b.strands[j][k]);
                c.angle.push_back(kTwoPi * k / n);
            }
            ++c.wrapping;
        }
        L.components.push_back(std::move(c));
    }
    double big = 0, small = std::numeric_limits<double>::infinity();
    for (const auto& c : L.components) {
        double hi = 0;
        for (Complex z : c.z) {
            hi = std::max(hi, std::abs(z));
            small = std::min(small, std::abs(z));
        }
        big = std::max(big, hi);
        if (hi < 1e-9) L.contains_core = true;
    }
    L.avoids_core = L.components.empty() || small > 1e-9 * (1 + big);
    L.braid = std::move(b);
    return L;
}

}  // namespace

SolidTorusLink trace_zero_set(const LoopPoly& g, Chart chart, const TraceOptions& opts) {
    if (g.is_semiholomorphic() && g.degree() > 0) return braid_link(track_roots(g, opts.samples), chart);
    SolidTorusLink L;
    L.chart = chart;
    L.seed_grid = opts.seed_grid;
    if (g.is_zero()) throw SingularZeroSet(Complex(0), 0);
    LevelSet ls{CompiledLoop(g), loop_scale(g)};
    const double R = zero_radius(g, L.warning);
    const auto seeds = find_seeds(ls, R, opts.seed_grid, opts.tol);
    const double h = kTwoPi / opts.samples;
    for (const Vec3& seed : seeds) {
        bool covered = false;
        for (const auto& c : L.components) {
            for (std::size_t k = 0; k < c.z.size() && !covered; ++k)
                covered = periodic_distance(Vec3(c.z[k].real(), c.z[k].imag(), c.angle[k]), seed) < 3 * h;
            if (covered) break;
        }
        if (covered) continue;
        L.components.push_back(trace_from(ls, seed, opts.samples, opts.tol));
    }
    double big = 0, small = std::numeric_limits<double>::infinity();
    for (const auto& c : L.components) {
        double hi = 0;
        for (Complex z : c.z) {
            hi = std::max(hi, std::abs(z));
            small = std::min(small, std::abs(z));
        }
        big = std::max(big, hi);
        if (hi < 1e-8) L.contains_core = true;
    }
    L.avoids_core = L.components.empty() || small > 1e-6 * (1 + big);
    if (L.warning.empty())
        L.warning = "seeding covers " + std::to_string(opts.seed_grid) + "^3 nodes; components between slices may be missed";
    return L;
}

SolidTorusLink trace_face_link(const MixedPoly& p, std::size_t index, const TraceOptions& opts) {
    const NewtonData nd = newton_polygon(p);
    if (index >= nd.faces.size()) throw FaceNotFound("face " + std::to_string(index) + " out of range");
    const bool last = index + 1 == nd.faces.size();
    const Chart chart = opts.chart.value_or(last && nd.faces.size() > 1 ? Chart::V : Chart::U);
    const LoopPoly g = chart == Chart::U ? face_to_loop(p, nd, index) : face_to_vchart_loop(p, nd, index);
    return trace_zero_set(g, chart, opts);
}

// ---------------------------------------------------------------- assembly

namespace {

std::vector<int> wrappings(const SolidTorusLink& L) {
    std::vector<int> w;
    for (const auto& c : L.components) w.push_back(std::abs(c.wrapping));
    std::sort(w.begin(), w.end());
    return w;
}

/// Scales epsilon^{k_i} separating the u-chart pieces radially.
std::vector<double> radial_nesting(const std::vector<const SolidTorusLink*>& pieces) {
    const std::size_t n = pieces.size();
    std::vector<double> lo(n, std::numeric_limits<double>::infinity()), hi(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& c : pieces[i]->components)
            for (Complex z : c.z) {
                lo[i] = std::min(lo[i], std::abs(z));
                hi[i] = std::max(hi[i], std::abs(z));
            }
    double eps = 0.5;
    auto ok = [&](double e) {
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (hi[i] > 0 && std::isfinite(lo[i + 1]) && !(e * hi[i] < 0.25 * lo[i + 1]))
                return false;
        return true;
    };
    while (!ok(eps)) {
        eps /= 2;
        if (std::pow(eps, double(n)) < 1e-150) throw DisjointnessFailure();
    }
    std::vector<double> sc;
    for (std::size_t i = 0; i < n; ++i) sc.push_back(std::pow(eps, double(n - i)));
    return sc;
}

}  // namespace

LinkDescription assemble_link(const std::vector<SolidTorusLink>& ls) {
    if (ls.empty()) throw std::invalid_argument("no link pieces");
    const std::size_t n = ls.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (ls[i].chart != Chart::U) throw std::invalid_argument("inner pieces must live in the u-chart");
    for (std::size_t i = 1; i < n; ++i)
        if (ls[i].chart == Chart::U && !ls[i].avoids_core) throw CoreViolation(i + 1);

    LinkDescription d;
    for (const auto& L : ls) {
        d.piece_components.push_back(static_cast<int>(L.components.size()));
        d.wrapping.push_back(wrappings(L));
    }

    bool all_braids = true;
    for (const auto& L : ls) all_braids = all_braids && L.braid.has_value() && L.chart == Chart::U;
    if (all_braids) {
        std::vector<GeometricBraid> bs;
        for (const auto& L : ls) bs.push_back(*L.braid);
        NestResult r = nest_braids(bs);
        d.kind = LinkKind::ClosedBraid;
        d.word = r.word;
        d.nesting = r.scales;
        d.components = d.word->components();
        return d;
    }

    const SolidTorusLink& last = ls.back();
    bool inner_braids = n > 1 && last.chart == Chart::V && last.braid;
    for (std::size_t i = 0; i + 1 < n; ++i) inner_braids = inner_braids && ls[i].braid.has_value();
    if (inner_braids && last.components.size() == 1 && last.contains_core) {
        std::vector<GeometricBraid> bs;
        for (std::size_t i = 0; i + 1 < n; ++i) bs.push_back(*ls[i].braid);
        NestResult r = nest_braids(bs);
        d.kind = LinkKind::BraidPlusAxis;
        d.word = r.word;
        d.axis = true;
        d.nesting = r.scales;
        d.components = d.word->components() + 1;
        return d;
    }
    std::vector<const SolidTorusLink*> inner;
    for (std::size_t i = 0; i < n; ++i)
        if (ls[i].chart == Chart::U) inner.push_back(&ls[i]);
    if (!inner.empty()) d.nesting = radial_nesting(inner);
    d.kind = LinkKind::TorusPair;
    d.core_u = ls.front().chart == Chart::U && ls.front().contains_core;
    d.core_v = last.chart == Chart::V && last.contains_core;
    if (last.chart == Chart::V && n > 1) d.nesting.push_back(d.nesting.empty() ? 1.0 : d.nesting.front());
    d.components = 0;
    for (int c : d.piece_components) d.components += c;
    return d;
}

int count_components(const LinkDescription& d) {
    if (d.kind != LinkKind::TorusPair && d.word) return d.word->components() + (d.axis ? 1 : 0);
    int c = 0;
    for (int x : d.piece_components) c += x;
    return c;
}

// ---------------------------------------------------------------- pipeline

LinkDescription link_of_singularity(const MixedPoly& p, const LinkOptions& opts) {
    const MixedPoly pp = principal_part(p);
    const NewtonData nd = newton_polygon(p);
    const StructureReport st = classify_structure(pp);
    const bool braid_route = st.u_semiholomorphic;
    if (opts.check_preconditions) {
        NondegReport inner = check_inner(p, false, opts.nondeg);
        if (inner.inner_nd != Status::Verified)
            throw PreconditionFailed("inner non-degeneracy", to_string(inner.inner_nd.value_or(Status::Inconclusive)));
        if (!braid_route) {
            Status nice = combine(check_nice(p, opts.nondeg));
            if (nice != Status::Verified) throw PreconditionFailed("niceness", to_string(nice));
        }
    }
    const std::size_t N = nd.faces.size();
    if (braid_route) {
        std::vector<GeometricBraid> bs;
        for (std::size_t i = 0; i < N; ++i) {
            LoopPoly g = face_to_loop(pp, nd, i);
            if (i > 0) g = g.divided_by_z(static_cast<int>(nd.faces[i].m));
            bs.push_back(track_roots(g, opts.samples));
        }
        NestResult r = nest_braids(bs);
        LinkDescription d;
        d.word = r.word;
        d.nesting = r.scales;
        for (const auto& b : bs) {
            d.piece_components.push_back(cycle_count(b.permutation));
            auto w = wrappings(braid_link(b, Chart::U));
            d.wrapping.push_back(w);
        }
        d.axis = !st.u_convenient;
        d.kind = d.axis ? LinkKind::BraidPlusAxis : LinkKind::ClosedBraid;
        d.components = r.word.components() + (d.axis ? 1 : 0);
        return d;
    }
    std::vector<SolidTorusLink> ls;
    TraceOptions to = opts.trace;
    to.samples = opts.samples;
    for (std::size_t i = 0; i < N; ++i) {
        to.chart = (i + 1 == N && N > 1) ? Chart::V : Chart::U;
        ls.push_back(trace_face_link(pp, i, to));
    }
    return assemble_link(ls);
}

}  // namespace mxl
