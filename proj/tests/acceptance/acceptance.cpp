#include "cli.hpp"
#include "generators.hpp"

#include "mxl/braids.hpp"
#include "mxl/certify.hpp"
#include "mxl/critical.hpp"
#include "mxl/errors.hpp"
#include "mxl/expr.hpp"
#include "mxl/json_io.hpp"
#include "mxl/linker.hpp"
#include "mxl/newton.hpp"
#include "mxl/nondegen.hpp"
#include "mxl/numeric.hpp"
#include "mxl/realizer.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace mxl;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

const char* kWorked = "u^8 + v^3*u^2 + conj(v)^5*u - 2*(v^7+conj(v)^7)";

Json cli_json(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = run_cli(args, out, err);
    return out.str().empty() ? Json() : Json::parse(out.str());
}

Outcome worked_example() {
    MixedPoly p = parse_poly(kWorked);
    NewtonData nd = newton_polygon(p);
    if (nd.faces.size() != 2) return fail("N = " + std::to_string(nd.faces.size()));
    if (!(nd.faces[0].weight == Weight{2, 1})) return fail("P_1 is not (2,1)");
    if (!(face_function(p, nd, 0) == parse_poly("v^3*u^2 + conj(v)^5*u - 2*(v^7 + conj(v)^7)")))
        return fail("f_{P_1} differs");
    if (!(face_function(p, nd, 1) == parse_poly("u^8 + v^3*u^2"))) return fail("f_{P_2} differs");
    LoopPoly g1, g2;
    g1.add(2, 0, 3, 1);
    g1.add(1, 0, -5, 1);
    g1.add(0, 0, 7, -2);
    g1.add(0, 0, -7, -2);
    g2.add(8, 0, 0, 1);
    g2.add(2, 0, 3, 1);
    if (!(face_to_loop(p, nd, 0) == g1)) return fail("g_1 differs");
    if (!(face_to_loop(p, nd, 1) == g2)) return fail("g_2 differs");
    StructureReport st = classify_structure(p);
    if (!st.convenient || !st.u_semiholomorphic) return fail("structure flags");
    NondegReport r = analyze_nondegeneracy(p);
    if (r.inner_nd != Status::Verified) return fail("inner ND not Verified");
    if (r.oka_nd != Status::Refuted) return fail("Oka ND not Refuted");
    double residual = -1;
    for (const auto& fv : r.oka_weak)
        if (fv.face.kind == FaceKind::Vertex && fv.face.point == LatticePoint{0, 7} &&
            fv.verdict.status == Status::Refuted && fv.verdict.witness) {
            Complex v = fv.verdict.witness->v;
            residual = std::abs(std::pow(v, 7) + std::pow(std::conj(v), 7));
        }
    if (residual < 0) return fail("no Refuted verdict with witness at vertex (0,7)");
    if (!(residual < 1e-8)) return fail("witness residual " + fmt(residual));
    int code = 0;
    Json j = cli_json({"analyze", kWorked}, code);
    if (code != 0 || j["nondegeneracy"]["inner_nd"] != "Verified" || j["nondegeneracy"]["oka_nd"] != "Refuted" ||
        j["newton"]["N"] != 2 || j["structure"]["convenient"] != true)
        return fail("CLI analyze disagrees with the library");
    return {true, "faces, loops and verdicts exact; |v^7 + conj(v)^7| = " + fmt(residual)};
}

Outcome critical_value() {
    LoopPoly g1 = face_to_loop(parse_poly(kWorked), 0);
    CriticalScan scan = scan_critical_points(g1, 0, 1024);
    if (scan.branches.size() != 1) return fail(std::to_string(scan.branches.size()) + " critical branches");
    double err = 0, min_value = std::numeric_limits<double>::infinity();
    for (const auto& cs : scan.branches[0]) {
        err = std::max(err, std::abs(cs.point + 0.5 * std::polar(1.0, -8 * cs.t)));
        min_value = std::min(min_value, std::abs(cs.value));
    }
    // g_1(-e^{-8it}/2, e^{it}) = -e^{-13it}/4 - 4 cos 7t, exactly
    TrigPoly cv;
    cv.add(-13, GaussRational(Rational(-1, 4)));
    cv.add(7, -2);
    cv.add(-7, -2);
    GridCertificate cert = certify_nonvanishing(cv, 256, 1 << 16);
    double dense = std::numeric_limits<double>::infinity();
    for (int k = 0; k < (1 << 16); ++k) dense = std::min(dense, std::abs(cv(kTwoPi * k / (1 << 16))));
    std::string detail = "critical point error " + fmt(err) + ", min |g_1(c(t))| over 1024 samples " +
                         fmt(min_value) + " (required > 0.1), over 65536 samples " + fmt(dense) + "; positivity " +
                         (cert.certified ? "certified with lower bound " + fmt(cert.min_value - cert.slack)
                                         : std::string("not certified"));
    return {err < 1e-10 && min_value > 0.1, detail};
}

Outcome trefoil_pipeline() {
    LinkDescription a = link_of_singularity(parse_poly("u^2 - v^3"));
    LinkDescription b = link_of_singularity(parse_poly("u^2 - v^2"));
    if (!a.word || !(*a.word == BraidWord::parse("1 1 1")) || a.components != 1) return fail("u^2 - v^3 link");
    if (!b.word || !(*b.word == BraidWord::parse("1 1")) || b.components != 2) return fail("u^2 - v^2 link");
    int code = 0;
    Json ja = cli_json({"link", "u^2 - v^3"}, code);
    if (code != 0 || ja["link"]["word"]["word"] != "1 1 1" || ja["link"]["components"] != 1) return fail("CLI trefoil");
    Json jb = cli_json({"link", "u^2 - v^2"}, code);
    if (code != 0 || jb["link"]["word"]["word"] != "1 1" || jb["link"]["components"] != 2) return fail("CLI Hopf");
    return {true, "sigma_1^3 (1 component), sigma_1^2 (2 components), library and CLI"};
}

Outcome derivative_degrees() {
    std::mt19937 rng(34);
    int polys = 0, checks = 0;
    const Var vars[] = {Var::U, Var::Ubar, Var::V, Var::Vbar};
    while (polys < 500) {
        MixedPoly p = gen::random_mixed(rng, 6, 8);
        NewtonData nd;
        try {
            nd = newton_polygon(p);
        } catch (const NoCompactFace&) {
            continue;
        }
        ++polys;
        for (const Face& face : nd.faces) {
            const Weight& P = face.weight;
            const long d = weighted_degree(p, P);
            const MixedPoly fP = relative_face_function(p, P);
            for (Var x : vars) {
                if (!p.depends_on(x)) continue;
                const long pi = (x == Var::U || x == Var::Ubar) ? P.p1 : P.p2;
                const MixedPoly fx = wirtinger(p, x);
                const long dx = weighted_degree(fx, P);
                if (dx < d - pi) return fail("d(P;f_x) < d(P;f) - p_i for " + format_poly(p));
                const bool equal = dx == d - pi;
                const bool depends = fP.depends_on(x);
                const bool commute = relative_face_function(fx, P) == wirtinger(fP, x);
                if (equal != depends || depends != commute)
                    return fail("equivalence broken for " + format_poly(p) + " with x = " + var_name(x));
                ++checks;
            }
        }
    }
    return {true, std::to_string(polys) + " polynomials, " + std::to_string(checks) + " (P, x) pairs"};
}

Outcome rescaling() {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> d(-1.0, 1.0), rd(0.05, 2.0), td(0.0, kTwoPi);
    int probes = 0;
    double worst = 0;
    while (probes < 200) {
        MixedPoly p = gen::random_mixed(rng, 6, 8);
        NewtonData nd;
        try {
            nd = newton_polygon(p);
        } catch (const NoCompactFace&) {
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, nd.faces.size() - 1);
        const std::size_t i = pick(rng);
        const Face& f = nd.faces[i];
        Complex u(d(rng), d(rng));
        double r = rd(rng), t = td(rng);
        Complex lhs = evaluate(face_function(p, nd, i), u * std::pow(r, f.k.get_d()), std::polar(r, t));
        Complex rhs = std::pow(r, f.k.get_d() * f.s + f.n) * face_to_loop(p, nd, i)(u, t);
        double rel = std::abs(lhs - rhs) / (1 + std::abs(lhs));
        worst = std::max(worst, rel);
        if (!(rel < 1e-9)) return fail("probe " + std::to_string(probes) + " off by " + fmt(rel));
        ++probes;
    }
    return {true, "200 probes, worst relative error " + fmt(worst)};
}

BraidWord random_word(std::mt19937& rng, int strands, int max_len) {
    std::uniform_int_distribution<int> gen(1, strands - 1), sign(0, 1), len(0, max_len);
    BraidWord w{strands, {}};
    int n = len(rng);
    for (int k = 0; k < n; ++k) w.letters.push_back(sign(rng) ? gen(rng) : -gen(rng));
    return w;
}

Outcome nesting() {
    std::mt19937 rng(66);
    std::uniform_int_distribution<int> levels(1, 3), strands(1, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<GeometricBraid> bs;
        int expected = 0;
        const int n = levels(rng);
        for (int i = 0; i < n; ++i) {
            const int s = strands(rng);
            BraidWord w = s > 1 ? random_word(rng, s, 3) : BraidWord{1, {}};
            bs.push_back(braid_from_word(w, 0, i > 0).braid);
            expected += cycle_count(bs.back().permutation);
        }
        NestResult r = nest_braids(bs);
        BraidWord half = extract_word(nest_with_scale(bs, r.k, r.epsilon / 2));
        if (!(half == r.word)) return fail("trial " + std::to_string(trial) + ": words differ at epsilon/2");
        if (r.word.components() != expected) return fail("trial " + std::to_string(trial) + ": component sum");
    }
    return {true, "50 sequences, identical words at epsilon and epsilon/2, additive components"};
}

Outcome principal_part_invariance() {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> extra(1, 3), e(0, 5), coeff(-3, 3);
    int accepted = 0, attempts = 0;
    while (accepted < 20 && attempts < 3000) {
        ++attempts;
        MixedPoly raw = gen::random_mixed(rng, 6, 6).filter([](const Exponents& x) { return x.ubar == 0; });
        MixedPoly p;
        LinkDescription base;
        NewtonData nd;
        try {
            p = principal_part(raw);
            nd = newton_polygon(p);
            NondegReport r = analyze_nondegeneracy(p);
            if (r.inner_nd != Status::Verified || r.nice != Status::Verified) continue;
            base = link_of_singularity(p);
        } catch (const Error&) {
            continue;
        }
        MixedPoly q = p;
        const int n = extra(rng);
        for (int added = 0; added < n;) {
            Exponents x{e(rng), e(rng), e(rng), e(rng)};
            MixedPoly m = MixedPoly::monomial(x, coeff(rng) == 0 ? 1 : coeff(rng));
            if (m.is_zero() || !lies_above_boundary(m, nd)) continue;
            q += m;
            ++added;
        }
        if (!(principal_part(q) == p)) return fail("added terms reached the boundary of " + format_poly(p));
        LinkDescription moved;
        try {
            moved = link_of_singularity(q);
        } catch (const Error& err) {
            return fail(format_poly(q) + ": " + err.what());
        }
        if (!base.same_as(moved)) return fail("description changed: " + format_poly(p) + " vs " + format_poly(q));
        ++accepted;
    }
    if (accepted < 20) return fail("only " + std::to_string(accepted) + " admissible polynomials found");
    return {true, "20 polynomials (" + std::to_string(attempts) + " candidates drawn), descriptions identical"};
}

Outcome closed_forms() {
    LoopPoly a, b;
    a.add(2, 0, 0, 1);
    a.add(0, 0, 2, -1);
    b.add(2, 0, 0, 1);
    b.add(0, 0, 3, -1);
    FibrationCertificate ca = check_pfibered(a, 0), cb = check_pfibered(b, 0);
    bool ok = ca.verified() && cb.verified() && std::abs(ca.min_arg_derivative - 2) < 1e-6 &&
              std::abs(cb.min_arg_derivative - 3) < 1e-6;
    return {ok, "u^2 - e^{2it}: " + fmt(ca.min_arg_derivative) + ", u^2 - e^{3it}: " + fmt(cb.min_arg_derivative)};
}

Outcome realizer_round_trip() {
    LoopPoly sigma;
    sigma.add(2, 0, 0, 1);
    sigma.add(0, 0, 1, -1);
    TowerResult t = build_tower({tower_input(sigma)});
    if (!(t.f == parse_poly("u^2 - v^3*conj(v)"))) return fail("tower emitted " + format_poly(t.f));
    if (t.report.strong_inner_nd != Status::Verified) return fail("strong inner ND not Verified");
    RealizationReport v = validate_realization(t.f, t.spec);
    LinkDescription d = link_of_singularity(t.f);
    if (v.status != Status::Verified || !d.word || !(*d.word == BraidWord::parse("1 1")) || d.components != 2)
        return fail("link of the tower is not the closure of sigma_1^2");
    MixedPoly corrupted = t.f;
    corrupted.add_term({.v = 3, .vbar = 1}, 1);  // zeroes the coefficient of v^3 conj(v)
    bool rejected = false;
    try {
        rejected = validate_realization(corrupted, t.spec).status != Status::Verified;
    } catch (const Mismatch&) {
        rejected = true;
    }
    if (!rejected) return fail("corrupted polynomial passed validation");
    return {true, "f = u^2 - v^3*conj(v), Hopf closure, corrupted coefficient rejected"};
}

Outcome implication_lattice() {
    std::mt19937 rng(1010);
    int polys = 0;
    std::uniform_int_distribution<int> kind(0, 2);
    while (polys < 100) {
        MixedPoly p = gen::random_mixed(rng, 5, 6, kind(rng) != 0);
        try {
            newton_polygon(p);
        } catch (const NoCompactFace&) {
            continue;
        }
        ++polys;
        NondegReport r = analyze_nondegeneracy(p);
        auto is = [](const std::optional<Status>& s, Status want) { return s && *s == want; };
        if (is(r.strong_inner_nd, Status::Verified) && !is(r.inner_nd, Status::Verified))
            return fail("strong inner without inner: " + format_poly(p));
        if (is(r.oka_strong_nd, Status::Verified) && !is(r.oka_nd, Status::Verified))
            return fail("strong Oka without Oka: " + format_poly(p));
        if (is(r.oka_nd, Status::Verified) && r.convenient && !is(r.inner_nd, Status::Verified))
            return fail("convenient Oka without inner: " + format_poly(p));
        if (is(r.isolated, Status::Verified) && !is(r.weakly_isolated, Status::Verified))
            return fail("isolated without weakly isolated: " + format_poly(p));
    }
    return {true, "100 polynomials, no implication violated"};
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {"worked example reproduction", worked_example},
        {"critical value of g_1", critical_value},
        {"trefoil and Hopf links", trefoil_pipeline},
        {"derivative degree property suite", derivative_degrees},
        {"rescaling identity", rescaling},
        {"nesting invariance", nesting},
        {"principal part invariance", principal_part_invariance},
        {"P-fibered closed forms", closed_forms},
        {"realizer round trip", realizer_round_trip},
        {"implication lattice", implication_lattice},
    };
    int only = 0;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only && static_cast<int>(i + 1) != only) continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu  %-34s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
