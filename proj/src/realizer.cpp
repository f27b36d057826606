#include "mxl/realizer.hpp"

#include "mxl/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace mxl {

TowerInput tower_input(const LoopPoly& loop, int samples) { return {track_roots(loop, samples), loop}; }

namespace {

/// Loop divided by its constant leading coefficient.
LoopPoly monic(const LoopPoly& g, std::size_t level) {
    if (!g.is_semiholomorphic()) throw NonSemiholomorphic();
    const TrigPoly lead = g.coefficient(g.degree());
    if (lead.coeffs().size() != 1 || lead.coeffs().begin()->first != 0)
        throw std::invalid_argument("level " + std::to_string(level) + ": leading coefficient must be constant");
    const GaussRational inv = GaussRational(1) / lead.coeffs().begin()->second;
    LoopPoly out;
    for (const auto& [key, c] : g.coeffs()) out.add(key.first, key.second, c * inv);
    return out;
}

struct Term {
    int e;         ///< u-exponent
    long alpha;    ///< r-exponent
    TrigPoly coeff;
};

/// Terms u^{m+l} r^{A + k (s - l)} T(t) c_l(n t) for l < s.
std::vector<Term> level_terms(const LoopPoly& g, int m, const RCoefficient& a, long k, int n) {
    std::vector<Term> out;
    const int s = g.degree();
    for (int l = 0; l < s; ++l) {
        TrigPoly c = g.coefficient(l).scaled(n) * a.t;
        if (c.is_zero()) continue;
        out.push_back({m + l, a.r_power + k * (s - l), c});
    }
    return out;
}

bool integral(const std::vector<Term>& terms) {
    for (const auto& t : terms)
        for (const auto& [beta, c] : t.coeff.coeffs())
            if (t.alpha < std::abs(beta) || (t.alpha - beta) % 2 != 0) return false;
    return true;
}

/// Smallest even k > lower whose terms are genuine monomials in v, conj(v).
long choose_k(const LoopPoly& g, int m, const RCoefficient& a, long lower, int n, long max_k) {
    long k = lower + 1;
    if (k % 2) ++k;
    for (; k <= max_k; k += 2)
        if (integral(level_terms(g, m, a, k, n))) return k;
    throw IntegralityFailure("no even weight up to " + std::to_string(max_k) + " gives integral exponents");
}

void emit(MixedPoly& f, const std::vector<Term>& terms) {
    for (const auto& t : terms)
        for (const auto& [beta, c] : t.coeff.coeffs()) {
            Exponents e;
            e.u = t.e;
            e.v = static_cast<int>((t.alpha + beta) / 2);
            e.vbar = static_cast<int>((t.alpha - beta) / 2);
            f.add_term(e, c);
        }
}

}  // namespace

TowerResult build_tower(const std::vector<TowerInput>& inputs, const TowerOptions& opts) {
    const std::size_t N = inputs.size();
    if (N == 0) throw std::invalid_argument("empty tower");
    TowerSpec spec;
    spec.levels = inputs;
    std::vector<LoopPoly> g;
    int acc = 0;
    for (std::size_t i = 0; i < N; ++i) {
        g.push_back(monic(inputs[i].loop, i + 1));
        spec.s.push_back(g.back().degree());
        spec.m.push_back(acc);
        acc += spec.s.back();
        if (spec.s.back() == 0) throw std::invalid_argument("level " + std::to_string(i + 1) + " has no strands");
    }
    spec.certificates.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        FibrationCertificate c = check_pfibered(g[i], spec.m[i], opts.samples);
        if (!c.verified()) throw NotPFibered(i + 1, c.min_arg_derivative);
    }
    spec.r.assign(N, 1);
    spec.k.assign(N, 0);
    spec.a.assign(N, {});

    MixedPoly f;
    // top level: r_N = 1
    const std::size_t top = N - 1;
    const RCoefficient one{0, TrigPoly::constant(1)};
    spec.k[top] = choose_k(g[top], spec.m[top], one, 0, 2, opts.max_k);
    spec.certificates[top] = check_pfibered(g[top].time_scaled(2), spec.m[top], opts.samples);
    {
        Exponents lead;
        lead.u = spec.m[top] + spec.s[top];
        f.add_term(lead, 1);
        auto terms = level_terms(g[top], spec.m[top], one, spec.k[top], 2);
        emit(f, terms);
        spec.a[top] = {spec.k[top] * spec.s[top], g[top].coefficient(0).scaled(2)};
    }
    for (std::size_t j = top; j-- > 0;) {
        const RCoefficient& a = spec.a[j + 1];
        long r = 0;
        if (j == 0 && spec.s[0] == 1) {
            r = 1;
            spec.certificates[0] = check_pfibered(g[0].time_scaled(2).times(a.t), 0, opts.samples);
        } else {
            for (long cand = 1; cand <= opts.max_r; cand *= 2) {
                FibrationCertificate c =
                    check_pfibered(g[j].time_scaled(static_cast<int>(2 * cand)).times(a.t), spec.m[j], opts.samples);
                if (c.verified()) {
                    r = cand;
                    spec.certificates[j] = c;
                    break;
                }
            }
            if (r == 0) throw SearchExhausted(j + 1, opts.max_r);
        }
        spec.r[j] = r;
        const int n = static_cast<int>(2 * r);
        spec.k[j] = choose_k(g[j], spec.m[j], a, spec.k[j + 1], n, opts.max_k);
        emit(f, level_terms(g[j], spec.m[j], a, spec.k[j], n));
        spec.a[j] = {a.r_power + spec.k[j] * spec.s[j], g[j].coefficient(0).scaled(n) * a.t};
    }
    TowerResult out;
    out.f = f;
    out.report = check_inner(f, true, opts.nondeg);
    out.spec = std::move(spec);
    return out;
}

BraidWord expected_word(const TowerSpec& spec, int samples) {
    std::vector<GeometricBraid> bs;
    for (std::size_t i = 0; i < spec.levels.size(); ++i)
        bs.push_back(track_roots(spec.levels[i].loop.time_scaled(static_cast<int>(2 * spec.r[i])), samples));
    return nest_braids(bs).word;
}

RealizationReport validate_realization(const MixedPoly& f, const TowerSpec& spec, const TowerOptions& opts) {
    RealizationReport rep;
    rep.expected = expected_word(spec, opts.samples);
    try {
        rep.nondeg = check_inner(f, true, opts.nondeg);
        LinkOptions lo;
        lo.samples = opts.samples;
        lo.nondeg = opts.nondeg;
        rep.link = link_of_singularity(f, lo);
    } catch (const Error& e) {
        throw Mismatch(std::string("realization does not analyze: ") + e.what());
    }
    if (rep.link.kind != LinkKind::ClosedBraid || !rep.link.word || !(*rep.link.word == rep.expected))
        throw Mismatch("link word " + (rep.link.word ? rep.link.word->to_string() : std::string("(none)")) +
                       " differs from requested " + rep.expected.to_string());
    const Status strong = rep.nondeg.strong_inner_nd.value_or(Status::Inconclusive);
    rep.status = strong;
    if (strong != Status::Verified) rep.note = std::string("strong inner non-degeneracy is ") + to_string(strong);
    return rep;
}

}  // namespace mxl
