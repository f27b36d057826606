#include "mxl/nondegen.hpp"

#include "mxl/certify.hpp"
#include "mxl/critical.hpp"
#include "mxl/errors.hpp"
#include "mxl/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

namespace mxl {

const char* to_string(Method m) {
    switch (m) {
    case Method::ExactShortcut: return "exact-shortcut";
    case Method::NumericSearch: return "numeric-search";
    case Method::Implied: return "implied";
    }
    return "?";
}

const char* to_string(FaceKind k) {
    switch (k) {
    case FaceKind::Edge: return "edge";
    case FaceKind::Vertex: return "vertex";
    case FaceKind::UAxis: return "u-axis";
    case FaceKind::VAxis: return "v-axis";
    }
    return "?";
}

Status combine(const std::vector<FaceVerdict>& vs) {
    bool inconclusive = false;
    for (const auto& fv : vs) {
        if (fv.verdict.status == Status::Refuted) return Status::Refuted;
        if (fv.verdict.status == Status::Inconclusive) inconclusive = true;
    }
    return inconclusive ? Status::Inconclusive : Status::Verified;
}

TrigPoly resultant(const LoopPoly& a, const LoopPoly& b) {
    const int n = a.degree(), m = b.degree();
    const int size = n + m;
    if (size == 0) return TrigPoly::constant(1);
    std::vector<std::vector<TrigPoly>> mat(size, std::vector<TrigPoly>(size));
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) mat[r][r + n - k] = a.coefficient(k);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) mat[m + r][r + m - k] = b.coefficient(k);

    TrigPoly prev = TrigPoly::constant(1);
    bool negate = false;
    for (int k = 0; k + 1 < size; ++k) {
        if (mat[k][k].is_zero()) {
            int r = k + 1;
            while (r < size && mat[r][k].is_zero()) ++r;
            if (r == size) return {};
            std::swap(mat[k], mat[r]);
            negate = !negate;
        }
        for (int i = k + 1; i < size; ++i) {
            for (int j = k + 1; j < size; ++j)
                mat[i][j] = exact_divide(mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j], prev);
            mat[i][k] = TrigPoly();
        }
        prev = mat[k][k];
    }
    return negate ? -mat[size - 1][size - 1] : mat[size - 1][size - 1];
}

namespace {

constexpr double kAxisEps = 1e-6;

double coeff_scale(const MixedPoly& p) {
    double s = 0;
    for (const auto& [e, c] : p.terms()) s = std::max(s, std::abs(c.to_complex()));
    return s > 0 ? s : 1;
}

enum class Target { Zero, Critical, CriticalZero };

Eigen::VectorXd residual_vector(const Jet& j, double scale, Target tgt) {
    Eigen::VectorXd r(tgt == Target::CriticalZero ? 6 : (tgt == Target::Zero ? 2 : 4));
    int k = 0;
    if (tgt != Target::Critical) {
        r[k++] = j.f.real() / scale;
        r[k++] = j.f.imag() / scale;
    }
    if (tgt != Target::Zero) {
        SingularResiduals s = j.residuals();
        const double s2 = scale * scale;
        r[k++] = s.s1.real() / s2;
        r[k++] = s.s1.imag() / s2;
        r[k++] = s.s2 / s2;
        r[k++] = s.s3 / s2;
    }
    return r;
}

Witness make_witness(const MixedPoly& f, Complex u, Complex v, Target tgt) {
    ResidualEvaluator ev(f);
    return {u, v, residual_vector(ev.jet(u, v), coeff_scale(f), tgt).norm()};
}

Verdict base_verdict(Method m, const CheckOptions& opts) {
    Verdict v;
    v.method = m;
    v.tolerance = opts.tol;
    return v;
}

Exponents swapped(const Exponents& e) { return {e.v, e.u, e.vbar, e.ubar}; }

MixedPoly swap_uv(const MixedPoly& p) {
    MixedPoly out;
    for (const auto& [e, c] : p.terms()) out.add_term(swapped(e), c);
    return out;
}

/// Trig polynomial of a v-only polynomial on |v| = 1.
TrigPoly on_unit_v(const MixedPoly& p) {
    TrigPoly out;
    for (const auto& [e, c] : p.terms()) out.add(e.v - e.vbar, c);
    return out;
}

// ---------------------------------------------------------------- vertices

enum class VertexMode { Weak, Strong, Nonzero };

TorusPoly vertex_profile(const MixedPoly& fv) {
    TorusPoly out;
    for (const auto& [e, c] : fv.terms()) out.add(e.u - e.ubar, e.v - e.vbar, c);
    return out;
}

Verdict vertex_verdict(const MixedPoly& fv, VertexMode mode, const CheckOptions& opts) {
    const TorusPoly phi = vertex_profile(fv);
    const TorusPoly phi_x = phi.derivative_x(), phi_y = phi.derivative_y();
    const TorusPoly m1 = imag_conj_product(phi, phi_x);
    const TorusPoly m2 = imag_conj_product(phi, phi_y);
    const TorusPoly m3 = imag_conj_product(phi_x, phi_y);
    TorusPoly target;
    switch (mode) {
    case VertexMode::Weak: target = phi.conj() * phi + m3 * m3; break;
    case VertexMode::Strong: target = m1 * m1 + m2 * m2 + m3 * m3; break;
    case VertexMode::Nonzero: target = phi.conj() * phi; break;
    }
    Verdict v = base_verdict(Method::ExactShortcut, opts);
    GridCertificate cert = certify_nonvanishing(target, opts.grid, opts.grid * 16);
    v.grid = cert.grid;
    v.min_value = cert.min_value;
    if (cert.certified) {
        v.status = Status::Verified;
        v.rigorous = true;
        v.margin = cert.min_value - cert.slack;
        return v;
    }
    const double s = coeff_scale(fv), s2 = s * s;
    auto residual = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd r;
        auto im = [&](const TorusPoly& q) { return q(x[0], x[1]).real() / s2; };
        Complex val = phi(x[0], x[1]) / s;
        switch (mode) {
        case VertexMode::Weak: r.resize(3); r << val.real(), val.imag(), im(m3); break;
        case VertexMode::Strong: r.resize(3); r << im(m1), im(m2), im(m3); break;
        case VertexMode::Nonzero: r.resize(2); r << val.real(), val.imag(); break;
        }
        return r;
    };
    Eigen::VectorXd x0(2);
    x0 << cert.argmin_x, cert.argmin_y;
    LeastSquaresResult lm = levenberg_marquardt(residual, x0);
    Complex u = std::polar(1.0, lm.x[0]), w = std::polar(1.0, lm.x[1]);
    Target tgt = mode == VertexMode::Weak ? Target::CriticalZero
                 : mode == VertexMode::Strong ? Target::Critical : Target::Zero;
    Witness wit = make_witness(fv, u, w, tgt);
    if (wit.residual < opts.tol) {
        v.status = Status::Refuted;
        v.witness = wit;
    } else {
        v.note = "grid certificate failed and refinement found no witness";
    }
    return v;
}

// ---------------------------------------------------------------- axes

/// f_{P_1} restricted to a neighbourhood of {u = 0}: conditions on A + B u + C conj(u).
Verdict axis_verdict(const MixedPoly& fp, bool strong, const CheckOptions& opts) {
    MixedPoly a = fp.filter([](const Exponents& e) { return e.u == 0 && e.ubar == 0; });
    MixedPoly b = fp.filter([](const Exponents& e) { return e.u == 1 && e.ubar == 0; });
    MixedPoly c = fp.filter([](const Exponents& e) { return e.u == 0 && e.ubar == 1; });
    const TrigPoly at = on_unit_v(a), bt = on_unit_v(b), ct = on_unit_v(c);
    const TrigPoly av = on_unit_v(wirtinger(a, Var::V)), avb = on_unit_v(wirtinger(a, Var::Vbar));
    const TrigPoly s1 = bt * avb.conj() - ct.conj() * av;
    const TrigPoly s2 = bt.conj() * bt - ct.conj() * ct;
    const TrigPoly s3 = av.conj() * av - avb.conj() * avb;
    TrigPoly target = s1.conj() * s1 + s2 * s2 + s3 * s3;
    if (!strong) target += at.conj() * at;

    Verdict v = base_verdict(Method::ExactShortcut, opts);
    const Target tgt = strong ? Target::Critical : Target::CriticalZero;
    if (target.is_zero()) {
        v.status = Status::Refuted;
        v.witness = make_witness(fp, 0, 1, tgt);
        v.note = "every derivative vanishes along the axis";
        return v;
    }
    GridCertificate cert = certify_nonvanishing(target, opts.grid, opts.grid * 16);
    v.grid = cert.grid;
    v.min_value = cert.min_value;
    if (cert.certified) {
        v.status = Status::Verified;
        v.rigorous = true;
        v.margin = cert.min_value - cert.slack;
        return v;
    }
    const double sc = coeff_scale(fp), sc2 = sc * sc;
    auto residual = [&](const Eigen::VectorXd& x) {
        const double t = x[0];
        Eigen::VectorXd r(strong ? 4 : 6);
        Complex z1 = s1(t);
        int k = 0;
        if (!strong) {
            Complex za = at(t) / sc;
            r[k++] = za.real();
            r[k++] = za.imag();
        }
        r[k++] = z1.real() / sc2;
        r[k++] = z1.imag() / sc2;
        r[k++] = s2(t).real() / sc2;
        r[k++] = s3(t).real() / sc2;
        return r;
    };
    Eigen::VectorXd x0(1);
    x0 << cert.argmin_x;
    LeastSquaresResult lm = levenberg_marquardt(residual, x0);
    Witness wit = make_witness(fp, 0, std::polar(1.0, lm.x[0]), tgt);
    if (wit.residual < opts.tol) {
        v.status = Status::Refuted;
        v.witness = wit;
    } else {
        v.note = "grid certificate failed and refinement found no witness";
    }
    return v;
}

// ---------------------------------------------------------------- numeric search on faces

struct ChartMap {
    int chart;  ///< 0: |v| = 1 with u in the unit disk, 1: |u| = 1 with v in the unit disk
    std::pair<Complex, Complex> operator()(double rho, double theta, double angle) const {
        if (chart == 0) return {std::polar(rho, theta), std::polar(1.0, angle)};
        return {std::polar(1.0, angle), std::polar(rho, theta)};
    }
};

struct SearchOutcome {
    double grid_min = std::numeric_limits<double>::infinity();
    double refined_min = std::numeric_limits<double>::infinity();
    std::optional<Witness> best;
    int grid = 0;
};

SearchOutcome search_face(const MixedPoly& f, Target tgt, const CheckOptions& opts) {
    ResidualEvaluator ev(f);
    const double sc = coeff_scale(f);
    const int n = std::max(opts.search_grid, 4);
    SearchOutcome out;
    out.grid = n;
    constexpr std::size_t keep = 12;
    for (int chart = 0; chart < 2; ++chart) {
        ChartMap map{chart};
        std::vector<std::pair<double, Eigen::Vector3d>> best;
        for (int i = 0; i < n; ++i) {
            const double rho = (i + 0.5) / n;
            for (int j = 0; j < n; ++j) {
                const double theta = kTwoPi * j / n;
                for (int k = 0; k < n; ++k) {
                    const double angle = kTwoPi * k / n;
                    auto [u, v] = map(rho, theta, angle);
                    double val = residual_vector(ev.jet(u, v), sc, tgt).norm();
                    out.grid_min = std::min(out.grid_min, val);
                    if (best.size() < keep || val < best.back().first) {
                        best.emplace_back(val, Eigen::Vector3d(rho, theta, angle));
                        std::sort(best.begin(), best.end(),
                                  [](const auto& x, const auto& y) { return x.first < y.first; });
                        if (best.size() > keep) best.pop_back();
                    }
                }
            }
        }
        auto residual = [&](const Eigen::VectorXd& x) {
            auto [u, v] = map(x[0], x[1], x[2]);
            return residual_vector(ev.jet(u, v), sc, tgt);
        };
        for (const auto& [val, start] : best) {
            LeastSquaresResult lm = levenberg_marquardt(residual, Eigen::VectorXd(start));
            auto [u, v] = map(lm.x[0], lm.x[1], lm.x[2]);
            if (std::abs(u) < kAxisEps || std::abs(v) < kAxisEps) continue;
            out.refined_min = std::min(out.refined_min, lm.norm);
            if (!out.best || lm.norm < out.best->residual) out.best = Witness{u, v, lm.norm};
        }
    }
    return out;
}

Verdict numeric_verdict(const MixedPoly& fp, Target tgt, const CheckOptions& opts) {
    Verdict v = base_verdict(Method::NumericSearch, opts);
    SearchOutcome s = search_face(fp, tgt, opts);
    v.grid = s.grid;
    v.min_value = std::min(s.grid_min, s.refined_min);
    const double heuristic = std::sqrt(opts.tol);
    if (s.best && s.best->residual < opts.tol) {
        v.status = Status::Refuted;
        v.witness = s.best;
    } else if (s.grid_min > heuristic && s.refined_min > heuristic) {
        v.status = Status::Verified;
        v.note = "heuristic: grid search plus local minimization";
    } else {
        v.note = "residual minimum between tolerance and heuristic threshold";
    }
    return v;
}

/// Certifies that f has no zero on either chart (three-dimensional Lipschitz grid).
GridCertificate certify_zero_free(const MixedPoly& f, int grid, int max_grid) {
    CompiledPoly cf(f);
    GridCertificate total;
    total.certified = true;
    total.min_value = std::numeric_limits<double>::infinity();
    for (int chart = 0; chart < 2; ++chart) {
        double l_rho = 0, l_theta = 0, l_angle = 0;
        for (const auto& t : cf.terms()) {
            const double c = std::abs(t.c);
            const Exponents& e = t.e;
            const int disk = chart == 0 ? e.u_degree() : e.v_degree();
            const int disk_freq = chart == 0 ? e.u - e.ubar : e.v - e.vbar;
            const int circle_freq = chart == 0 ? e.v - e.vbar : e.u - e.ubar;
            l_rho += c * disk;
            l_theta += c * std::abs(disk_freq);
            l_angle += c * std::abs(circle_freq);
        }
        ChartMap map{chart};
        bool ok = false;
        double chart_min = 0;
        int n = grid;
        for (;; n *= 2) {
            chart_min = std::numeric_limits<double>::infinity();
            const double h = kTwoPi / n;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) {
                        auto [u, v] = map((i + 0.5) / n, (j + 0.5) * h, (k + 0.5) * h);
                        chart_min = std::min(chart_min, std::abs(cf(u, v)));
                    }
            const double slack = (l_rho / n + (l_theta + l_angle) * h) / 2;
            ok = chart_min > slack;
            if (ok || n * 2 > max_grid || chart_min < 1e-12) break;
        }
        total.grid = std::max(total.grid, n);
        total.min_value = std::min(total.min_value, chart_min);
        total.certified = total.certified && ok;
    }
    return total;
}

// ---------------------------------------------------------------- semiholomorphic edges

struct SemiLoop {
    LoopPoly g;  ///< face loop, holomorphic in its first variable
    int m = 0;   ///< order of g at z = 0
    LoopPoly h;  ///< g / z^m
};

std::optional<SemiLoop> semiholomorphic_loop(const MixedPoly& p, const NewtonData& nd, std::size_t i) {
    MixedPoly fp = face_function(p, nd, i);
    SemiLoop s;
    if (!fp.depends_on(Var::Ubar)) s.g = face_to_loop(p, nd, i);
    else if (!fp.depends_on(Var::U)) s.g = face_to_loop(p.conj(), nd, i);
    else return std::nullopt;
    s.m = s.g.min_degree();
    s.h = s.g.divided_by_z(s.m);
    return s;
}

double loop_scale(const LoopPoly& g) {
    double s = 0;
    for (const auto& [k, c] : g.coeffs()) s = std::max(s, c.l1_norm());
    return s > 0 ? s : 1;
}

/// Looks for a non-zero multiple root of g near the smallest sampled critical value.
std::optional<Witness> refine_critical_zero(const MixedPoly& fp, const SemiLoop& s, const CriticalScan& scan,
                                            double& scan_min) {
    const double sc = loop_scale(s.g);
    CompiledLoop cg(s.g);
    scan_min = std::numeric_limits<double>::infinity();
    const CriticalSample* best = nullptr;
    for (const auto& br : scan.branches)
        for (const auto& cs : br) {
            if (std::abs(cs.point) < kAxisEps) continue;
            double val = std::abs(cs.value) / sc;
            if (val < scan_min) {
                scan_min = val;
                best = &cs;
            }
        }
    if (!best) return std::nullopt;
    auto residual = [&](const Eigen::VectorXd& x) {
        LoopJet j = cg.jet(Complex(x[0], x[1]), x[2]);
        Eigen::VectorXd r(4);
        r << j.g.real() / sc, j.g.imag() / sc, j.gz.real() / sc, j.gz.imag() / sc;
        return r;
    };
    Eigen::VectorXd x0(3);
    x0 << best->point.real(), best->point.imag(), best->t;
    LeastSquaresResult lm = levenberg_marquardt(residual, x0);
    Complex w(lm.x[0], lm.x[1]);
    if (std::abs(w) < kAxisEps) return std::nullopt;
    return make_witness(fp, w, std::polar(1.0, lm.x[2]), Target::CriticalZero);
}

/// `loop_conj` means the loop was built from conj(f); witnesses map back unchanged.
Verdict semiholomorphic_edge(const MixedPoly& fp, const SemiLoop& s, bool strong, const CheckOptions& opts,
                             bool& fallback) {
    fallback = false;
    Verdict v = base_verdict(Method::ExactShortcut, opts);
    const int deg = s.h.degree();
    const TrigPoly lc = s.h.coefficient(deg);
    GridCertificate lead = certify_nonvanishing(lc, opts.grid, opts.grid * 16);
    if (!lead.certified) {
        fallback = true;
        return v;
    }
    const Target tgt = strong ? Target::Critical : Target::CriticalZero;
    if (!strong) {
        TrigPoly res = resultant(s.h, s.h.derivative_z());
        GridCertificate cert = certify_nonvanishing(res, opts.grid, opts.grid * 16);
        v.grid = cert.grid;
        v.min_value = cert.min_value;
        if (cert.certified) {
            v.status = Status::Verified;
            v.rigorous = true;
            v.margin = cert.min_value - cert.slack;
            v.note = "discriminant of g/u^m certified non-vanishing";
            return v;
        }
    }
    CriticalScan scan = scan_critical_points(s.h, s.m, opts.samples);
    v.grid = opts.samples;
    double value_min = 0;
    std::optional<Witness> wit = refine_critical_zero(fp, s, scan, value_min);
    if (wit && wit->residual < opts.tol) {
        v.status = Status::Refuted;
        v.witness = wit;
        v.min_value = 0;
        return v;
    }
    const double heuristic = std::sqrt(opts.tol);
    if (!strong) {
        v.min_value = value_min;
        if (value_min > heuristic) {
            v.status = Status::Verified;
            v.note = "heuristic: sampled critical values stay away from zero";
        } else {
            v.note = "critical values come close to zero without a confirmed witness";
        }
        return v;
    }

    // Strong: Im(conj(g) g_t) at the critical points must keep away from zero.
    const double sc = loop_scale(s.g), sc2 = sc * sc;
    const LoopPoly& eq = scan.equation;
    double q_min = std::numeric_limits<double>::infinity();
    auto q_of = [&](const CriticalSample& c) { return std::imag(std::conj(c.value) * c.dvalue) / sc2; };
    for (const auto& br : scan.branches) {
        for (std::size_t k = 0; k < br.size(); ++k) {
            if (std::abs(br[k].point) < kAxisEps) continue;
            const double q = q_of(br[k]);
            q_min = std::min(q_min, std::abs(q));
            if (k == 0 || std::abs(br[k - 1].point) < kAxisEps) continue;
            const double q_prev = q_of(br[k - 1]);
            if ((q_prev < 0) == (q < 0)) continue;
            // bisection along the branch
            double ta = br[k - 1].t, tb = br[k].t;
            Complex za = br[k - 1].point, zb = br[k].point;
            double qa = q_prev;
            CriticalSample mid = br[k];
            for (int it = 0; it < 60; ++it) {
                const double tm = 0.5 * (ta + tb);
                mid = critical_point_near(s.h, eq, s.m, tm, 0.5 * (za + zb));
                const double qm = q_of(mid);
                if ((qm < 0) == (qa < 0)) {
                    ta = tm;
                    za = mid.point;
                    qa = qm;
                } else {
                    tb = tm;
                    zb = mid.point;
                }
            }
            if (std::abs(mid.point) < kAxisEps) continue;
            Witness w = make_witness(fp, mid.point, std::polar(1.0, mid.t), tgt);
            if (w.residual < opts.tol) {
                v.status = Status::Refuted;
                v.witness = w;
                v.min_value = 0;
                return v;
            }
        }
    }
    v.min_value = std::min(q_min, value_min);
    if (v.min_value > heuristic) {
        v.status = Status::Verified;
        v.note = "heuristic: sampled argument rates of critical values keep their sign";
    } else {
        v.note = "argument rate of a critical value comes close to zero without a confirmed witness";
    }
    return v;
}

Verdict edge_verdict(const MixedPoly& p, const NewtonData& nd, std::size_t i, bool strong,
                     const CheckOptions& opts) {
    MixedPoly fp = face_function(p, nd, i);
    const Target tgt = strong ? Target::Critical : Target::CriticalZero;
    if (auto s = opts.shortcuts ? semiholomorphic_loop(p, nd, i) : std::nullopt) {
        bool fallback = false;
        Verdict v = semiholomorphic_edge(fp, *s, strong, opts, fallback);
        if (!fallback) return v;
        Verdict n = numeric_verdict(fp, tgt, opts);
        n.note = "leading coefficient not certified; " + n.note;
        return n;
    }
    return numeric_verdict(fp, tgt, opts);
}

Verdict true_verdict(const MixedPoly& p, const NewtonData& nd, std::size_t i, const CheckOptions& opts) {
    MixedPoly fp = face_function(p, nd, i);
    Verdict v = base_verdict(Method::ExactShortcut, opts);
    if (auto s = semiholomorphic_loop(p, nd, i)) {
        const int deg = s->h.degree();
        const TrigPoly lc = s->h.coefficient(deg), c0 = s->h.coefficient(0);
        double best_t = 0, best = -1;
        for (int k = 0; k < opts.samples; ++k) {
            double t = kTwoPi * k / opts.samples;
            double val = std::abs(lc(t)) * std::abs(c0(t));
            if (val > best) {
                best = val;
                best_t = t;
            }
        }
        if (best > 0 && deg > 0) {
            std::vector<Complex> roots = polynomial_roots(s->h.coefficients_at(best_t));
            auto it = std::max_element(roots.begin(), roots.end(),
                                       [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
            v.witness = make_witness(fp, *it, std::polar(1.0, best_t), Target::Zero);
            if (v.witness->residual < opts.tol && std::abs(*it) > kAxisEps) {
                v.status = Status::Verified;
                v.rigorous = true;
                return v;
            }
        }
    }
    v.method = Method::NumericSearch;
    SearchOutcome s = search_face(fp, Target::Zero, opts);
    v.grid = s.grid;
    v.min_value = s.refined_min;
    if (s.best && s.best->residual < opts.tol) {
        v.status = Status::Verified;
        v.witness = s.best;
        return v;
    }
    v.witness.reset();
    GridCertificate cert = certify_zero_free(fp, opts.search_grid, opts.search_grid * 2);
    v.grid = cert.grid;
    v.min_value = cert.min_value;
    if (cert.certified) {
        v.status = Status::Refuted;
        v.rigorous = true;
        v.method = Method::ExactShortcut;
        v.note = "zero-free on both charts by Lipschitz grid";
    } else {
        v.note = "no zero found and emptiness not certified";
    }
    return v;
}

// ---------------------------------------------------------------- assembly

void run_parallel(std::vector<std::function<void()>>& tasks, int threads) {
    if (threads <= 1 || tasks.size() <= 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(tasks.size());
    auto worker = [&] {
        for (std::size_t k; (k = next++) < tasks.size();) {
            try {
                tasks[k]();
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(tasks.size()));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct Parts {
    bool weak = false;
    bool strong = false;
    bool nice = false;
    bool truth = false;
};

FaceRef edge_ref(std::size_t i) { return {FaceKind::Edge, i, {}}; }
FaceRef vertex_ref(const LatticePoint& pt) { return {FaceKind::Vertex, 0, pt}; }

Verdict implied_from(const Verdict& src, const std::string& why) {
    Verdict v = src;
    v.method = Method::Implied;
    v.note = why;
    return v;
}

void reconcile_pairs(std::vector<FaceVerdict>& weak, std::vector<FaceVerdict>& strong) {
    if (weak.size() != strong.size()) return;
    for (std::size_t k = 0; k < weak.size(); ++k) {
        Verdict& w = weak[k].verdict;
        Verdict& s = strong[k].verdict;
        if (w.status == Status::Refuted && s.status != Status::Refuted) {
            Verdict r = implied_from(w, "a critical zero is a critical point");
            s = r;
        } else if (s.status == Status::Verified && w.status == Status::Inconclusive) {
            w = implied_from(s, "no critical points at all");
            w.witness.reset();
        }
    }
}

bool is_inner_item(const FaceVerdict& fv, const NewtonData& nd) {
    if (fv.face.kind == FaceKind::Edge) return true;
    if (fv.face.kind != FaceKind::Vertex) return false;
    int idx = nd.vertex_index(fv.face.point);
    return idx >= 0 && !nd.vertices[idx].extreme;
}

NondegReport build_report(const MixedPoly& p, const CheckOptions& opts, Parts parts) {
    const NewtonData nd = newton_polygon(p);
    const StructureReport sr = classify_structure(p);
    NondegReport rep;
    rep.convenient = sr.convenient;
    const std::size_t nf = nd.faces.size();
    const std::size_t nv = nd.vertices.size();
    std::vector<std::function<void()>> tasks;

    auto add_oka = [&](std::vector<FaceVerdict>& out, bool strong) {
        out.resize(nf + nv);
        for (std::size_t i = 0; i < nf; ++i) {
            out[i].face = edge_ref(i);
            tasks.emplace_back([&, dst = &out[i].verdict, i, strong] { *dst = edge_verdict(p, nd, i, strong, opts); });
        }
        for (std::size_t j = 0; j < nv; ++j) {
            out[nf + j].face = vertex_ref(nd.vertices[j].point);
            tasks.emplace_back([&, dst = &out[nf + j].verdict, j, strong] {
                MixedPoly fv = vertex_function(p, nd.vertices[j].point);
                *dst = vertex_verdict(fv, strong ? VertexMode::Strong : VertexMode::Weak, opts);
            });
        }
    };
    auto add_axes = [&](std::vector<FaceVerdict>& out, bool strong) {
        out.resize(2);
        out[0].face = {FaceKind::UAxis, 0, {}};
        out[1].face = {FaceKind::VAxis, nf - 1, {}};
        tasks.emplace_back([&, dst = &out[0].verdict, strong] {
            *dst = axis_verdict(face_function(p, nd, 0), strong, opts);
        });
        tasks.emplace_back([&, dst = &out[1].verdict, strong] {
            Verdict v = axis_verdict(swap_uv(face_function(p, nd, nf - 1)), strong, opts);
            if (v.witness) std::swap(v.witness->u, v.witness->v);
            *dst = v;
        });
    };

    if (parts.weak) {
        add_oka(rep.oka_weak, false);
        add_axes(rep.axis_weak, false);
    }
    if (parts.strong) {
        add_oka(rep.oka_strong, true);
        add_axes(rep.axis_strong, true);
    }
    if (parts.nice) {
        for (const auto& vx : nd.vertices)
            if (!vx.extreme) rep.nice_vertices.push_back({vertex_ref(vx.point), {}});
        for (auto& fv : rep.nice_vertices)
            tasks.emplace_back([&, dst = &fv] {
                dst->verdict = vertex_verdict(vertex_function(p, dst->face.point), VertexMode::Nonzero, opts);
            });
    }
    if (parts.truth) {
        rep.true_faces.resize(nf);
        for (std::size_t i = 0; i < nf; ++i) {
            rep.true_faces[i].face = edge_ref(i);
            tasks.emplace_back([&, i] { rep.true_faces[i].verdict = true_verdict(p, nd, i, opts); });
        }
    }
    run_parallel(tasks, opts.threads);

    if (parts.weak && parts.strong) {
        reconcile_pairs(rep.oka_weak, rep.oka_strong);
        reconcile_pairs(rep.axis_weak, rep.axis_strong);
    }
    auto lift_axes = [&](std::vector<FaceVerdict>& axes, const std::vector<FaceVerdict>& oka, const char* why) {
        if (!rep.convenient || oka.empty() || combine(oka) != Status::Verified) return;
        for (auto& a : axes)
            if (a.verdict.status == Status::Inconclusive) a.verdict = implied_from(oka.front().verdict, why);
    };
    if (parts.weak) lift_axes(rep.axis_weak, rep.oka_weak, "convenient and Newton non-degenerate");
    if (parts.strong) lift_axes(rep.axis_strong, rep.oka_strong, "convenient and strongly Newton non-degenerate");
    if (parts.weak && parts.strong) reconcile_pairs(rep.axis_weak, rep.axis_strong);

    auto inner_items = [&](const std::vector<FaceVerdict>& oka, const std::vector<FaceVerdict>& axes) {
        std::vector<FaceVerdict> items = axes;
        for (const auto& fv : oka)
            if (is_inner_item(fv, nd)) items.push_back(fv);
        return items;
    };
    if (parts.weak) {
        rep.oka_nd = combine(rep.oka_weak);
        rep.inner_nd = combine(inner_items(rep.oka_weak, rep.axis_weak));
        if (*rep.inner_nd == Status::Verified) rep.weakly_isolated = Status::Verified;
        if (*rep.inner_nd == Status::Verified && *rep.oka_nd == Status::Refuted) {
            for (const auto& fv : rep.oka_weak)
                if (fv.verdict.status == Status::Refuted && fv.face.kind == FaceKind::Vertex)
                    rep.notes.push_back("Oka-degenerate at extreme vertex (" + std::to_string(fv.face.point.a) +
                                        "," + std::to_string(fv.face.point.b) +
                                        ") while the boundary is inner non-degenerate");
        }
    }
    if (parts.strong) {
        rep.oka_strong_nd = combine(rep.oka_strong);
        rep.strong_inner_nd = combine(inner_items(rep.oka_strong, rep.axis_strong));
        if (*rep.strong_inner_nd == Status::Verified) rep.isolated = Status::Verified;
    }
    if (parts.nice) rep.nice = combine(rep.nice_vertices);
    if (parts.truth) rep.true_polynomial = combine(rep.true_faces);
    return rep;
}

}  // namespace

std::vector<FaceVerdict> check_oka(const MixedPoly& p, bool strong, const CheckOptions& opts) {
    Parts parts;
    (strong ? parts.strong : parts.weak) = true;
    NondegReport rep = build_report(p, opts, parts);
    return strong ? rep.oka_strong : rep.oka_weak;
}

NondegReport check_inner(const MixedPoly& p, bool strong, const CheckOptions& opts) {
    Parts parts;
    parts.weak = true;
    parts.strong = strong;
    return build_report(p, opts, parts);
}

std::vector<FaceVerdict> check_nice(const MixedPoly& p, const CheckOptions& opts) {
    Parts parts;
    parts.nice = true;
    return build_report(p, opts, parts).nice_vertices;
}

std::vector<FaceVerdict> check_true(const MixedPoly& p, const CheckOptions& opts) {
    Parts parts;
    parts.truth = true;
    return build_report(p, opts, parts).true_faces;
}

NondegReport analyze_nondegeneracy(const MixedPoly& p, const CheckOptions& opts) {
    return build_report(p, opts, {true, true, true, true});
}

ConvenientizeResult convenientize(const MixedPoly& p, const MixedPoly& m1, const MixedPoly& m2) {
    for (const auto& [e, c] : m1.terms())
        if (e.u_degree() != 0) throw std::invalid_argument("M1 must depend on v and conj(v) only");
    for (const auto& [e, c] : m2.terms())
        if (e.v_degree() != 0) throw std::invalid_argument("M2 must depend on u and conj(u) only");
    if (classify_structure(p).convenient) return {p, true, "already convenient"};
    const NewtonData nd = newton_polygon(p);
    const Face& first = nd.faces.front();
    const Face& last = nd.faces.back();
    Rational bound1(first.d, first.weight.p2), bound2(last.d, last.weight.p1);
    bound1.canonicalize();
    bound2.canonicalize();
    for (const auto& [e, c] : m1.terms())
        if (Rational(e.v_degree()) <= bound1) throw ExponentTooLow("M1", rational_to_string(bound1));
    for (const auto& [e, c] : m2.terms())
        if (Rational(e.u_degree()) <= bound2) throw ExponentTooLow("M2", rational_to_string(bound2));
    MixedPoly out = p + m1 + m2;
    if (!classify_structure(out).convenient)
        throw std::invalid_argument("the added terms do not reach both axes");
    return {out, false, ""};
}

}  // namespace mxl
