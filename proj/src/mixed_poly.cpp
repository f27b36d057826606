#include "mxl/mixed_poly.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace mxl {

const char* var_name(Var x) {
    switch (x) {
        case Var::U: return "u";
        case Var::Ubar: return "conj(u)";
        case Var::V: return "v";
        case Var::Vbar: return "conj(v)";
    }
    return "?";
}

MixedPoly MixedPoly::constant(const GaussRational& c) {
    MixedPoly p;
    p.add_term({}, c);
    return p;
}

MixedPoly MixedPoly::monomial(const Exponents& e, const GaussRational& c) {
    MixedPoly p;
    p.add_term(e, c);
    return p;
}

MixedPoly MixedPoly::variable(Var x) {
    Exponents e;
    switch (x) {
        case Var::U: e.u = 1; break;
        case Var::Ubar: e.ubar = 1; break;
        case Var::V: e.v = 1; break;
        case Var::Vbar: e.vbar = 1; break;
    }
    return monomial(e);
}

void MixedPoly::add_term(const Exponents& e, const GaussRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

GaussRational MixedPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussRational{} : it->second;
}

std::set<LatticePoint> MixedPoly::support() const {
    std::set<LatticePoint> out;
    for (const auto& [e, c] : terms_) out.insert({e.u_degree(), e.v_degree()});
    return out;
}

namespace {

int exponent_of(const Exponents& e, Var x) {
    switch (x) {
        case Var::U: return e.u;
        case Var::Ubar: return e.ubar;
        case Var::V: return e.v;
        case Var::Vbar: return e.vbar;
    }
    return 0;
}

}  // namespace

bool MixedPoly::depends_on(Var x) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [x](const auto& t) { return exponent_of(t.first, x) > 0; });
}

int MixedPoly::max_exponent(Var x) const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, exponent_of(e, x));
    return m;
}

int MixedPoly::total_degree() const {
    int m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, e.u_degree() + e.v_degree());
    return m;
}

MixedPoly MixedPoly::conj() const {
    MixedPoly out;
    for (const auto& [e, c] : terms_)
        out.terms_.emplace(Exponents{e.ubar, e.vbar, e.u, e.v}, c.conj());
    return out;
}

MixedPoly MixedPoly::pow(unsigned n) const {
    MixedPoly result = constant(1);
    MixedPoly base = *this;
    while (n > 0) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n > 0) base = base * base;
    }
    return result;
}

MixedPoly& MixedPoly::operator+=(const MixedPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MixedPoly& MixedPoly::operator-=(const MixedPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MixedPoly& MixedPoly::operator*=(const GaussRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

MixedPoly MixedPoly::operator-() const {
    MixedPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

MixedPoly operator*(const MixedPoly& a, const MixedPoly& b) {
    MixedPoly out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add_term({ea.u + eb.u, ea.v + eb.v, ea.ubar + eb.ubar, ea.vbar + eb.vbar}, ca * cb);
    return out;
}

MixedPoly wirtinger(const MixedPoly& p, Var x) {
    MixedPoly out;
    for (const auto& [e, c] : p.terms()) {
        int k = exponent_of(e, x);
        if (k == 0) continue;
        Exponents d = e;
        switch (x) {
            case Var::U: --d.u; break;
            case Var::Ubar: --d.ubar; break;
            case Var::V: --d.v; break;
            case Var::Vbar: --d.vbar; break;
        }
        out.add_term(d, c * GaussRational(k));
    }
    return out;
}

namespace {

/// Powers z^0..z^n without heap allocation for small n.
class Powers {
public:
    Powers(Complex z, int n) {
        if (n + 1 > static_cast<int>(inline_.size())) heap_.resize(n + 1);
        Complex* d = data();
        d[0] = 1;
        for (int k = 1; k <= n; ++k) d[k] = d[k - 1] * z;
    }
    Complex operator[](int k) const { return heap_.empty() ? inline_[k] : heap_[k]; }

private:
    Complex* data() { return heap_.empty() ? inline_.data() : heap_.data(); }
    std::array<Complex, 40> inline_{};
    std::vector<Complex> heap_;
};

struct PowerTable {
    PowerTable(Complex u, Complex v, int n)
        : pu(u, n), pv(v, n), pub(std::conj(u), n), pvb(std::conj(v), n) {}
    Complex monomial(const Exponents& e) const { return pu[e.u] * pv[e.v] * pub[e.ubar] * pvb[e.vbar]; }
    Powers pu, pv, pub, pvb;
};

Complex sum_terms(const std::vector<CompiledPoly::Term>& terms, const PowerTable& pw) {
    Complex acc = 0;
    for (const auto& t : terms) acc += t.c * pw.monomial(t.e);
    return acc;
}

int max_exp_of(const MixedPoly& p) {
    return std::max({p.max_exponent(Var::U), p.max_exponent(Var::V), p.max_exponent(Var::Ubar),
                     p.max_exponent(Var::Vbar)});
}

}  // namespace

Complex evaluate(const MixedPoly& p, Complex u, Complex v) {
    return CompiledPoly(p)(u, v);
}

double SingularResiduals::norm() const {
    return std::sqrt(std::norm(s1) + s2 * s2 + s3 * s3);
}

SingularResiduals Jet::residuals() const {
    SingularResiduals r;
    r.s1 = fu * std::conj(fvbar) - std::conj(fubar) * fv;
    r.s2 = std::norm(fu) - std::norm(fubar);
    r.s3 = std::norm(fv) - std::norm(fvbar);
    return r;
}

SingularResiduals singular_residuals(const MixedPoly& p, Complex u, Complex v) {
    return ResidualEvaluator(p)(u, v);
}

StructureReport classify_structure(const MixedPoly& p) {
    StructureReport r;
    r.u_semiholomorphic = !p.depends_on(Var::Ubar);
    r.ubar_semiholomorphic = !p.depends_on(Var::U);
    r.v_semiholomorphic = !p.depends_on(Var::Vbar);
    r.vbar_semiholomorphic = !p.depends_on(Var::V);
    r.holomorphic = r.u_semiholomorphic && r.v_semiholomorphic;
    // The lowest support point on an axis is always a boundary vertex.
    for (const auto& pt : p.support()) {
        if (pt.b == 0) r.u_convenient = true;
        if (pt.a == 0) r.v_convenient = true;
    }
    r.convenient = r.u_convenient && r.v_convenient;
    return r;
}

CompiledPoly::CompiledPoly(const MixedPoly& p) : max_exp_(max_exp_of(p)) {
    terms_.reserve(p.size());
    for (const auto& [e, c] : p.terms()) terms_.push_back({e, c.to_complex()});
}

Complex CompiledPoly::operator()(Complex u, Complex v) const {
    if (terms_.empty()) return 0;
    PowerTable pw(u, v, max_exp_);
    return sum_terms(terms_, pw);
}

double CompiledPoly::l1_norm() const {
    double s = 0;
    for (const auto& t : terms_) s += std::abs(t.c);
    return s;
}

ResidualEvaluator::ResidualEvaluator(const MixedPoly& p)
    : f_(p), fu_(wirtinger(p, Var::U)), fubar_(wirtinger(p, Var::Ubar)),
      fv_(wirtinger(p, Var::V)), fvbar_(wirtinger(p, Var::Vbar)), max_exp_(max_exp_of(p)) {
    scale_ = 0;
    for (const auto& t : f_.terms()) scale_ = std::max(scale_, std::abs(t.c));
    if (scale_ == 0) scale_ = 1;
}

Jet ResidualEvaluator::jet(Complex u, Complex v) const {
    PowerTable pw(u, v, max_exp_);
    return {sum_terms(f_.terms_, pw), sum_terms(fu_.terms_, pw), sum_terms(fubar_.terms_, pw),
            sum_terms(fv_.terms_, pw), sum_terms(fvbar_.terms_, pw)};
}

}  // namespace mxl
